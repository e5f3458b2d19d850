#include "hod/kernels.h"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hod/errors.h"

namespace hod::kernels {

namespace {

void check_grid(std::size_t n, Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<Eigen::Index>(n) != rows * cols) {
    throw DimensionError("entry count does not match rows*cols");
  }
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

CMatrix evaluate_entries(std::span<const Polynomial> entries, Eigen::Index rows,
                         Eigen::Index cols, std::span<const cplx> pt) {
  check_grid(entries.size(), rows, cols);
  CMatrix M(rows, cols);
  const Eigen::Index total = rows * cols;
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index k = 0; k < total; ++k) {
    M(k / cols, k % cols) = evaluate(entries[static_cast<std::size_t>(k)], pt);
  }
  return M;
}

CMatrix evaluate_entries_serial(std::span<const Polynomial> entries, Eigen::Index rows,
                                Eigen::Index cols, std::span<const cplx> pt) {
  check_grid(entries.size(), rows, cols);
  CMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      M(i, j) = evaluate(entries[static_cast<std::size_t>(i * cols + j)], pt);
    }
  }
  return M;
}

CMatrix assemble_mdz(std::span<const Polynomial> shifted, std::span<const Exponent> row_alphas,
                     std::span<const Exponent> cols) {
  const auto N = static_cast<Eigen::Index>(shifted.size());
  const auto nrows = static_cast<Eigen::Index>(row_alphas.size()) * N;
  const auto ncols = static_cast<Eigen::Index>(cols.size());
  CMatrix M = CMatrix::Zero(nrows, ncols);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const Exponent& alpha = row_alphas[static_cast<std::size_t>(r / N)];
    const Polynomial& f = shifted[static_cast<std::size_t>(r % N)];
    for (Eigen::Index c = 0; c < ncols; ++c) {
      const Exponent& beta = cols[static_cast<std::size_t>(c)];
      if (alpha.divides(beta)) M(r, c) = f.coefficient(beta - alpha);
    }
  }
  return M;
}

CMatrix assemble_mdz_reference(std::span<const Polynomial> generators, std::span<const cplx> x0,
                               std::span<const Exponent> row_alphas,
                               std::span<const Exponent> cols) {
  const Point base(x0.begin(), x0.end());
  const std::size_t n = base.size();
  const auto N = static_cast<Eigen::Index>(generators.size());
  CMatrix M(static_cast<Eigen::Index>(row_alphas.size()) * N,
            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < row_alphas.size(); ++a) {
    // (x - x0)^alpha
    Polynomial shift_mono = Polynomial::constant(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial lin = Polynomial::variable(n, i) - Polynomial::constant(n, base[i]);
      shift_mono = shift_mono * lin.pow(static_cast<unsigned>(row_alphas[a][i]));
    }
    for (Eigen::Index j = 0; j < N; ++j) {
      const Polynomial row_poly = shift_mono * generators[static_cast<std::size_t>(j)];
      for (std::size_t c = 0; c < cols.size(); ++c) {
        M(static_cast<Eigen::Index>(a) * N + j, static_cast<Eigen::Index>(c)) =
            apply_functional(Functional::delta(base, cols[c]), row_poly);
      }
    }
  }
  return M;
}

}  // namespace hod::kernels
