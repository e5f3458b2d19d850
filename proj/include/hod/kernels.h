#pragma once

// Matrix assembly kernels. Each parallel kernel has a serial reference with
// the same contract; tests compare them entry by entry and bench/ times them.

#include <span>
#include <vector>

#include "hod/linalg.h"
#include "hod/polynomial.h"

namespace hod::kernels {

/// Evaluates a row-major grid of polynomials at pt (OpenMP over entries).
CMatrix evaluate_entries(std::span<const Polynomial> entries, Eigen::Index rows,
                         Eigen::Index cols, std::span<const cplx> pt);
CMatrix evaluate_entries_serial(std::span<const Polynomial> entries, Eigen::Index rows,
                                Eigen::Index cols, std::span<const cplx> pt);

/// Dual-space matrix rows (alpha, j) for alpha in row_alphas (alpha-major),
/// columns beta in cols. Entry = Delta_beta((x-x0)^alpha f_j) at x0, read off
/// as the coefficient of y^(beta-alpha) in shifted[j](y) = f_j(y + x0).
CMatrix assemble_mdz(std::span<const Polynomial> shifted, std::span<const Exponent> row_alphas,
                     std::span<const Exponent> cols);

/// Serial reference for assemble_mdz: forms (x-x0)^alpha f_j explicitly and
/// applies each differential functional by differentiation and evaluation.
CMatrix assemble_mdz_reference(std::span<const Polynomial> generators, std::span<const cplx> x0,
                               std::span<const Exponent> row_alphas,
                               std::span<const Exponent> cols);

/// Number of threads the parallel kernels will use.
int thread_count();

}  // namespace hod::kernels
