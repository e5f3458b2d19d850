#include "hod/linalg.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hod/errors.h"

namespace hod {

namespace {

struct Factorization {
  Eigen::VectorXd sigma;  // descending
  CMatrix V;              // cols x cols, full
};

// Tall matrices are reduced by Householder QR first; the SVD then runs on
// the square triangular factor.
Factorization factor(const CMatrix& M) {
  Factorization f;
  const Eigen::Index cols = M.cols();
  if (M.rows() == 0 || cols == 0) {
    f.sigma = Eigen::VectorXd::Zero(0);
    f.V = CMatrix::Identity(cols, cols);
    return f;
  }
  if (M.rows() > cols) {
    Eigen::HouseholderQR<CMatrix> qr(M);
    CMatrix R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<CMatrix> svd(R, Eigen::ComputeFullV);
    f.sigma = svd.singularValues();
    f.V = svd.matrixV();
  } else {
    Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeFullV);
    f.sigma = svd.singularValues();
    f.V = svd.matrixV();
  }
  return f;
}

RankReport decide(const Eigen::VectorXd& sigma, Eigen::Index cols, double tol,
                  double reference_scale) {
  if (!(tol > 0.0 && tol < 1.0)) throw ArgumentError("rank tolerance must lie in (0,1)");
  RankReport r;
  r.tol_used = tol;
  r.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double s1 = sigma.size() ? sigma[0] : 0.0;
  const double scale = std::max(s1, reference_scale);
  r.threshold = tol * scale;
  if (scale < kAbsoluteFloor) {
    r.rank = 0;
  } else {
    r.rank = static_cast<int>(std::count_if(r.singular_values.begin(), r.singular_values.end(),
                                            [&](double s) { return s > r.threshold; }));
  }
  r.corank = static_cast<int>(cols) - r.rank;
  return r;
}

}  // namespace

void require_finite(const CMatrix& M, const char* what) {
  if (!M.allFinite()) throw NumericalError(std::string(what) + ": non-finite matrix entries");
}

RankReport numerical_rank(const CMatrix& M, double tol) { return numerical_rank(M, tol, 0.0); }

RankReport numerical_rank(const CMatrix& M, double tol, double reference_scale) {
  require_finite(M, "numerical_rank");
  auto f = factor(M);
  return decide(f.sigma, M.cols(), tol, reference_scale);
}

CMatrix kernel_basis(const CMatrix& M, double tol) { return kernel_basis(M, tol, 0.0); }

CMatrix kernel_basis(const CMatrix& M, double tol, double reference_scale) {
  require_finite(M, "kernel_basis");
  auto f = factor(M);
  auto r = decide(f.sigma, M.cols(), tol, reference_scale);
  return f.V.rightCols(r.corank);
}

KernelResult kernel_with_rank(const CMatrix& M, double tol, double reference_scale) {
  require_finite(M, "kernel_with_rank");
  auto f = factor(M);
  KernelResult out;
  out.rank = decide(f.sigma, M.cols(), tol, reference_scale);
  out.basis = f.V.rightCols(out.rank.corank);
  return out;
}

LeastSquaresResult least_squares(const CMatrix& A, const CVector& b, double tol) {
  require_finite(A, "least_squares");
  if (!b.allFinite()) throw NumericalError("least_squares: non-finite right-hand side");
  if (A.rows() != b.size()) throw DimensionError("least_squares: rows of A and size of b differ");
  if (A.rows() == 0) throw DimensionError("least_squares: empty system");
  const Eigen::Index n = A.cols();
  LeastSquaresResult out;
  out.x = CVector::Zero(n);
  CMatrix U;
  CMatrix V;
  Eigen::VectorXd sigma;
  CVector c;
  if (A.rows() > n) {
    Eigen::HouseholderQR<CMatrix> qr(A);
    CMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    CVector qtb = qr.householderQ().adjoint() * b;
    Eigen::BDCSVD<CMatrix> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U = svd.matrixU();
    V = svd.matrixV();
    sigma = svd.singularValues();
    c = U.adjoint() * qtb.head(n);
  } else {
    Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    U = svd.matrixU();
    V = svd.matrixV();
    sigma = svd.singularValues();
    c = U.adjoint() * b;
  }
  const double s1 = sigma.size() ? sigma[0] : 0.0;
  if (s1 > 0.0) {
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      if (sigma[i] <= tol * s1) break;
      out.x += V.col(i) * (c[i] / sigma[i]);
      ++out.rank;
    }
  }
  out.residual = (A * out.x - b).norm();
  return out;
}

CMatrix prune_rows(const CMatrix& M, double tol) { return prune_rows(M, tol, 0.0); }

CMatrix prune_rows(const CMatrix& M, double tol, double reference_scale) {
  require_finite(M, "prune_rows");
  if (M.rows() == 0 || M.cols() == 0) return CMatrix(0, M.cols());
  auto f = factor(M);
  auto r = decide(f.sigma, M.cols(), tol, reference_scale);
  CMatrix out(r.rank, M.cols());
  for (int i = 0; i < r.rank; ++i) out.row(i) = f.sigma[i] * f.V.col(i).adjoint();
  return out;
}

CMatrix orthonormalize(const CMatrix& U, double tol) {
  if (U.cols() == 0) return U;
  Eigen::BDCSVD<CMatrix> svd(U, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > tol * s[0] && s[0] >= kAbsoluteFloor) ++r;
  return svd.matrixU().leftCols(r);
}

std::vector<double> principal_angles(const CMatrix& U, const CMatrix& V) {
  if (U.rows() != V.rows()) throw DimensionError("principal_angles: row counts differ");
  CMatrix Qu = orthonormalize(U, 1e-12);
  CMatrix Qv = orthonormalize(V, 1e-12);
  std::vector<double> angles;
  if (Qu.cols() == 0 || Qv.cols() == 0) return angles;
  CMatrix C = Qu.adjoint() * Qv;
  Eigen::BDCSVD<CMatrix> svd(C);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    angles.push_back(std::acos(std::clamp(s[i], 0.0, 1.0)));
  }
  // acos loses accuracy near 0: recompute small angles from the residual
  // of projecting one basis onto the other.
  if (Qu.cols() == Qv.cols()) {
    CMatrix resid = Qv - Qu * C;
    Eigen::BDCSVD<CMatrix> rs(resid);
    const auto& t = rs.singularValues();
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double sine = t[static_cast<Eigen::Index>(angles.size() - 1 - i)];
      if (angles[i] < 0.1) angles[i] = std::asin(std::clamp(sine, 0.0, 1.0));
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double subspace_distance(const CMatrix& U, const CMatrix& V) {
  auto a = principal_angles(U, V);
  CMatrix Qu = orthonormalize(U, 1e-12);
  CMatrix Qv = orthonormalize(V, 1e-12);
  if (Qu.cols() != Qv.cols()) return std::numbers::pi / 2;
  return a.empty() ? 0.0 : a.back();
}

}  // namespace hod
