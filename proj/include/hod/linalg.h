#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hod {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kAbsoluteFloor = 1e-14;

/// Outcome of a numerical rank decision.
///
/// rank counts the singular values above `threshold`, where
/// threshold = tol_used * max(sigma_1, reference_scale). When sigma_1 and the
/// reference scale are both below kAbsoluteFloor the rank is 0.
struct RankReport {
  int rank = 0;
  int corank = 0;
  std::vector<double> singular_values;  // descending, min(rows, cols) values
  double tol_used = kDefaultRankTol;
  double threshold = 0.0;
};

RankReport numerical_rank(const CMatrix& M, double tol = kDefaultRankTol);

// Same decision measured against max(sigma_1, reference_scale). Used for
// matrices evaluated from polynomials whose coefficient size is known, so a
// uniformly tiny matrix is recognised as numerically zero.
RankReport numerical_rank(const CMatrix& M, double tol, double reference_scale);

/// Orthonormal basis (as columns) of the numerical null space.
CMatrix kernel_basis(const CMatrix& M, double tol = kDefaultRankTol);
CMatrix kernel_basis(const CMatrix& M, double tol, double reference_scale);

struct KernelResult {
  RankReport rank;
  CMatrix basis;  // orthonormal columns
};

/// Rank decision and null-space basis from a single factorization.
KernelResult kernel_with_rank(const CMatrix& M, double tol = kDefaultRankTol,
                              double reference_scale = 0.0);

struct LeastSquaresResult {
  CVector x;
  double residual = 0.0;
  int rank = 0;
};

/// Minimum-norm least-squares solution of A x = b (truncated SVD at tol).
/// The truncation is relative only, so a uniformly tiny A still gets a step.
LeastSquaresResult least_squares(const CMatrix& A, const CVector& b,
                                 double tol = kDefaultRankTol);

/// rank(M) rows spanning the row space of M; same kernel as M.
CMatrix prune_rows(const CMatrix& M, double tol = kDefaultRankTol);
CMatrix prune_rows(const CMatrix& M, double tol, double reference_scale);

/// Principal angles (radians, ascending) between the column spans of U and V.
/// Both must have the same number of rows; columns need not be orthonormal.
std::vector<double> principal_angles(const CMatrix& U, const CMatrix& V);

/// Largest principal angle, or pi/2 when the dimensions differ.
double subspace_distance(const CMatrix& U, const CMatrix& V);

/// Orthonormal basis of the column span of U.
CMatrix orthonormalize(const CMatrix& U, double tol = kDefaultRankTol);

void require_finite(const CMatrix& M, const char* what);

}  // namespace hod
