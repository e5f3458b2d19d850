#include "hod/deflation.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hod/dual_space.h"
#include "hod/errors.h"
#include "hod/kernels.h"

namespace hod {

cplx Rng::unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

SymbolicMatrix::SymbolicMatrix(std::size_t nvars, std::vector<RowLabel> rows,
                               std::vector<Exponent> cols, std::vector<Polynomial> entries)
    : nvars_(nvars), rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
  if (entries_.size() != rows_.size() * cols_.size()) {
    throw DimensionError("SymbolicMatrix: entry count does not match labels");
  }
}

CMatrix SymbolicMatrix::evaluate(std::span<const cplx> pt) const {
  if (pt.size() != nvars_) throw DimensionError("SymbolicMatrix::evaluate: point dimension");
  return kernels::evaluate_entries(entries_, rows(), cols(), pt);
}

double SymbolicMatrix::coefficient_scale() const {
  double s = 0.0;
  for (const auto& p : entries_) s = std::max(s, p.max_abs_coefficient());
  return s;
}

namespace {

SymbolicMatrix build_matrix(const PolySystem& F, const std::vector<Exponent>& row_alphas,
                            std::vector<Exponent> cols) {
  std::vector<RowLabel> rows;
  std::vector<Polynomial> entries;
  entries.reserve(row_alphas.size() * F.size() * cols.size());
  for (const auto& alpha : row_alphas) {
    for (std::size_t j = 0; j < F.size(); ++j) {
      rows.push_back({j, alpha});
      const Polynomial row_poly = monomial_multiply(F[j], alpha);
      for (const auto& beta : cols) entries.push_back(differentiate(row_poly, beta));
    }
  }
  return SymbolicMatrix(F.nvars(), std::move(rows), std::move(cols), std::move(entries));
}

void check_point(const PolySystem& F, const Point& x0) {
  if (x0.size() != F.nvars()) {
    throw DimensionError("point has " + std::to_string(x0.size()) + " coordinates, system has " +
                         std::to_string(F.nvars()) + " variables");
  }
}

// First s >= 1 such that no variable is already named lam<s>_*.
int free_stage(const std::vector<std::string>& names) {
  for (int s = 1;; ++s) {
    const std::string prefix = "lam" + std::to_string(s) + "_";
    if (std::none_of(names.begin(), names.end(),
                     [&](const std::string& v) { return v.rfind(prefix, 0) == 0; })) {
      return s;
    }
  }
}

struct Extension {
  std::vector<std::string> names;
  std::size_t total = 0;
  int stage = 1;
};

Extension extend_names(const PolySystem& F, std::size_t k) {
  Extension e;
  e.names = F.var_names();
  e.stage = free_stage(e.names);
  for (std::size_t i = 0; i < k; ++i) {
    e.names.push_back("lam" + std::to_string(e.stage) + "_" + std::to_string(i + 1));
  }
  e.total = e.names.size();
  return e;
}

RankReport jacobian_rank(const PolySystem& F, const Point& x0, double tol_rank) {
  return rank_at(jacobian(F), x0, tol_rank);
}

}  // namespace

SymbolicMatrix deflation_matrix(const PolySystem& F, int d) {
  if (d < 1) throw ArgumentError("deflation_matrix: d must be at least 1");
  return build_matrix(F, monomials_up_to(F.nvars(), d - 1),
                      MonomialFrame(F.nvars(), d).nonzero());
}

SymbolicMatrix jacobian(const PolySystem& F) { return deflation_matrix(F, 1); }

SymbolicMatrix truncated_deflation_matrix(const PolySystem& F, int d, TruncatedRows rows) {
  if (d < 1) throw ArgumentError("truncated_deflation_matrix: d must be at least 1");
  const auto alphas = rows == TruncatedRows::Originals ? monomials_up_to(F.nvars(), 0)
                                                       : monomials_up_to(F.nvars(), d - 1);
  return build_matrix(F, alphas, monomials_of_degree(F.nvars(), d));
}

RankReport rank_at(const SymbolicMatrix& A, std::span<const cplx> pt, double tol_rank) {
  return numerical_rank(A.evaluate(pt), tol_rank, A.coefficient_scale());
}

DeflationOperator::DeflationOperator(std::size_t nvars, Polynomial::TermMap coefficients,
                                     bool homogeneous)
    : nvars_(nvars), homogeneous_(homogeneous) {
  for (auto& [beta, c] : coefficients) {
    if (beta.size() != nvars) throw DimensionError("DeflationOperator: exponent length");
    if (c == cplx{}) continue;
    if (beta.is_zero()) throw ArgumentError("DeflationOperator: beta must be nonzero");
    coeffs_.emplace(beta, c);
    order_ = std::max(order_, beta.degree());
  }
  if (coeffs_.empty()) throw ArgumentError("DeflationOperator: zero operator");
  if (homogeneous_) {
    for (const auto& [beta, c] : coeffs_) {
      if (beta.degree() != order_) {
        throw ArgumentError("DeflationOperator: homogeneous operator with mixed orders");
      }
    }
  }
}

DeflationOperator DeflationOperator::from_vector(std::size_t nvars, int d,
                                                 std::span<const cplx> coeffs, bool homogeneous) {
  const auto labels =
      homogeneous ? monomials_of_degree(nvars, d) : MonomialFrame(nvars, d).nonzero();
  if (labels.size() != coeffs.size()) {
    throw DimensionError("DeflationOperator::from_vector: expected " +
                         std::to_string(labels.size()) + " coefficients");
  }
  Polynomial::TermMap t;
  for (std::size_t i = 0; i < labels.size(); ++i) t.emplace(labels[i], coeffs[i]);
  return DeflationOperator(nvars, std::move(t), homogeneous);
}

Polynomial apply_operator(const DeflationOperator& Q, const Polynomial& p) {
  if (p.nvars() != Q.nvars()) throw DimensionError("apply_operator: variable count");
  Polynomial r(p.nvars());
  for (const auto& [beta, c] : Q.coefficients()) r += differentiate(p, beta) * c;
  return r;
}

Functional operator_to_functional(const DeflationOperator& Q, const Point& basepoint) {
  Polynomial::TermMap t;
  for (const auto& [beta, c] : Q.coefficients()) t.emplace(beta, c * beta.factorial());
  return Functional(basepoint, std::move(t));
}

DeflationOperator functional_to_operator(const Functional& L) {
  Polynomial::TermMap t;
  for (const auto& [beta, c] : L.terms()) t.emplace(beta, c / beta.factorial());
  return DeflationOperator(L.nvars(), std::move(t));
}

std::string to_string(AugmentationKind k) {
  switch (k) {
    case AugmentationKind::FirstOrderB:
      return "first-order-B";
    case AugmentationKind::HigherOrderIndeterminate:
      return "higher-order-indeterminate";
    case AugmentationKind::FixedOperator:
      return "fixed-operator";
  }
  return "unknown";
}

constexpr double kNoiseLevel = 1e-12;

OrderPrediction predict_order(const PolySystem& F, const Point& x0, double tol_rank,
                              double tol_coeff, Rng& rng) {
  check_point(F, x0);
  if (!(tol_coeff > 0.0 && tol_coeff < 1.0)) throw ArgumentError("tol_coeff must lie in (0,1)");
  const SymbolicMatrix J = jacobian(F);
  const CMatrix J0 = J.evaluate(x0);
  auto kr = kernel_with_rank(J0, tol_rank, J.coefficient_scale());
  if (kr.rank.corank == 0) throw AlreadyRegularError("predict_order: Jacobian has full rank at x0");

  CVector mix(kr.basis.cols());
  for (Eigen::Index i = 0; i < mix.size(); ++i) mix[i] = rng.unit_complex();
  CVector g = kr.basis * mix;
  g /= g.norm();

  OrderPrediction out;
  out.tol_coeff = tol_coeff;
  out.gamma.assign(g.data(), g.data() + g.size());
  const auto H = substitute_line(F, x0, out.gamma);
  for (std::size_t j = 0; j < H.coeffs.size(); ++j) {
    const double mx = H.max_magnitude[j];
    // Equations that vanish along the line up to roundoff (e.g. equations
    // in variables gamma does not move) carry no information.
    const double noise = kNoiseLevel * evaluation_scale(F[j], x0);
    if (mx <= noise) continue;
    for (const auto& [deg, c] : H.coeffs[j]) {
      if (std::abs(c) > tol_coeff * mx && std::abs(c) > noise) out.support_degrees.insert(deg);
    }
  }
  if (out.support_degrees.empty()) {
    throw InconclusiveError("predict_order: H(t) has no coefficient above the tolerance");
  }
  out.d = *out.support_degrees.begin() - 1;
  if (out.d < 1) {
    throw InconclusiveError("predict_order: lowest support degree of H(t) is " +
                            std::to_string(out.d + 1) + ", x0 is not close enough to a root");
  }
  return out;
}

AugmentedSystem deflate_first_order(const PolySystem& F, const Point& x0, double tol_rank,
                                    Rng& rng) {
  check_point(F, x0);
  const std::size_t n = F.nvars();
  const SymbolicMatrix J = jacobian(F);
  const CMatrix J0 = J.evaluate(x0);
  const RankReport rank = numerical_rank(J0, tol_rank, J.coefficient_scale());
  if (rank.corank == 0) throw AlreadyRegularError("deflate_first_order: x0 is a regular point");

  AugmentedSystem out;
  out.kind = AugmentationKind::FirstOrderB;
  out.order = 1;
  out.seed = rng.seed();
  out.n_original = n;
  out.rank = rank;
  const auto r = static_cast<std::size_t>(rank.rank);
  const bool corank_one = r + 1 == n;
  const std::size_t k = corank_one ? n : r + 1;
  out.multiplier_count = k;

  CMatrix B = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  if (!corank_one) {
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
      for (Eigen::Index l = 0; l < B.cols(); ++l) {
        B(i, l) = rng.unit_complex();
        out.drawn_coefficients.push_back(B(i, l));
      }
    }
  }
  std::vector<cplx> b(k);
  for (auto& v : b) {
    v = rng.unit_complex();
    out.drawn_coefficients.push_back(v);
  }

  const Extension ext = extend_names(F, k);
  out.stage = ext.stage;
  const std::size_t total = ext.total;
  std::vector<Polynomial> polys;
  for (const auto& f : F.polys()) polys.push_back(f.extended(total));
  // (B lambda)_j as linear forms in the multipliers.
  std::vector<Polynomial> direction(n, Polynomial(total));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      direction[j].add_term(Exponent::unit(total, n + l),
                            B(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)));
    }
  }
  for (std::size_t i = 0; i < F.size(); ++i) {
    Polynomial g(total);
    for (std::size_t j = 0; j < n; ++j) {
      g += J.at(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).extended(total) *
           direction[j];
    }
    polys.push_back(std::move(g));
  }
  Polynomial h = Polynomial::constant(total, -1.0);
  for (std::size_t l = 0; l < k; ++l) h.add_term(Exponent::unit(total, n + l), b[l]);
  polys.push_back(std::move(h));
  out.system = PolySystem(std::move(polys), ext.names);

  CMatrix stacked(J0.rows() + 1, static_cast<Eigen::Index>(k));
  stacked.topRows(J0.rows()) = J0 * B;
  for (std::size_t l = 0; l < k; ++l) stacked(J0.rows(), static_cast<Eigen::Index>(l)) = b[l];
  CVector rhs = CVector::Zero(stacked.rows());
  rhs[stacked.rows() - 1] = 1.0;
  const auto ls = least_squares(stacked, rhs);
  out.multiplier_start.assign(ls.x.data(), ls.x.data() + ls.x.size());
  return out;
}

AugmentedSystem deflate_higher_order(const PolySystem& F, int d, const Point& x0,
                                     double tol_rank, Rng& rng) {
  check_point(F, x0);
  if (d < 1) throw ArgumentError("deflate_higher_order: d must be at least 1");
  const std::size_t n = F.nvars();
  if (jacobian_rank(F, x0, tol_rank).corank == 0) {
    throw AlreadyRegularError("deflate_higher_order: x0 is a regular point");
  }
  const SymbolicMatrix A = deflation_matrix(F, d);
  const CMatrix A0 = A.evaluate(x0);
  const RankReport rank = numerical_rank(A0, tol_rank, A.coefficient_scale());
  if (rank.corank == 0) {
    throw OrderTooLowError("deflate_higher_order: A[" + std::to_string(d) +
                           "](x0) has full column rank");
  }
  const auto m = static_cast<std::size_t>(rank.corank);
  const auto nc = static_cast<std::size_t>(A.cols());

  AugmentedSystem out;
  out.kind = AugmentationKind::HigherOrderIndeterminate;
  out.order = d;
  out.seed = rng.seed();
  out.n_original = n;
  out.multiplier_count = nc;
  out.multiplier_labels = A.col_labels();
  out.rank = rank;

  CMatrix Bk(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nc));
  for (Eigen::Index i = 0; i < Bk.rows(); ++i) {
    for (Eigen::Index c = 0; c < Bk.cols(); ++c) {
      Bk(i, c) = rng.unit_complex();
      out.drawn_coefficients.push_back(Bk(i, c));
    }
  }

  const Extension ext = extend_names(F, nc);
  out.stage = ext.stage;
  const std::size_t total = ext.total;
  std::vector<Polynomial> polys;
  for (const auto& f : F.polys()) polys.push_back(f.extended(total));
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    Polynomial g(total);
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      g += A.at(r, c).extended(total) *
           Polynomial::variable(total, n + static_cast<std::size_t>(c));
    }
    polys.push_back(std::move(g));
  }
  for (Eigen::Index i = 0; i < Bk.rows(); ++i) {
    Polynomial h = Polynomial::constant(total, -1.0);
    for (Eigen::Index c = 0; c < Bk.cols(); ++c) {
      h.add_term(Exponent::unit(total, n + static_cast<std::size_t>(c)), Bk(i, c));
    }
    polys.push_back(std::move(h));
  }
  out.system = PolySystem(std::move(polys), ext.names);

  CMatrix stacked(A0.rows() + Bk.rows(), A0.cols());
  stacked << A0, Bk;
  CVector rhs = CVector::Zero(stacked.rows());
  rhs.tail(Bk.rows()).setOnes();
  const auto ls = least_squares(stacked, rhs);
  out.multiplier_start.assign(ls.x.data(), ls.x.data() + ls.x.size());
  return out;
}

AugmentedSystem deflate_with_operator(const PolySystem& F, const DeflationOperator& Q, int d,
                                      std::optional<int> row_degree_bound) {
  if (Q.nvars() != F.nvars()) throw DimensionError("deflate_with_operator: operator dimension");
  if (d < 1) throw ArgumentError("deflate_with_operator: d must be at least 1");
  if (Q.order() > d) throw ArgumentError("deflate_with_operator: operator order exceeds d");
  const int bound = row_degree_bound.value_or(d);
  if (bound < 1) throw ArgumentError("deflate_with_operator: row degree bound must be >= 1");
  AugmentedSystem out;
  out.kind = AugmentationKind::FixedOperator;
  out.order = d;
  out.n_original = F.nvars();
  out.multiplier_count = 0;
  std::vector<Polynomial> polys(F.polys());
  for (const auto& alpha : monomials_up_to(F.nvars(), bound - 1)) {
    for (const auto& f : F.polys()) polys.push_back(apply_operator(Q, monomial_multiply(f, alpha)));
  }
  out.system = PolySystem(std::move(polys), F.var_names());
  return out;
}

int corank_drop_order(const PolySystem& F, const Point& x0, double tol_rank) {
  check_point(F, x0);
  const SymbolicMatrix J = jacobian(F);
  const CMatrix J0 = J.evaluate(x0);
  auto kr = kernel_with_rank(J0, tol_rank, J.coefficient_scale());
  if (kr.rank.corank == 0) throw AlreadyRegularError("corank_drop_order: x0 is a regular point");
  std::vector<std::vector<cplx>> dirs;
  for (Eigen::Index k = 0; k < kr.basis.cols(); ++k) {
    dirs.emplace_back(kr.basis.col(k).data(), kr.basis.col(k).data() + kr.basis.rows());
  }
  int d0 = -1;
  for (const auto& f : F.polys()) {
    const Polynomial restricted = substitute_affine(f, x0, dirs);
    const double mx = restricted.max_abs_coefficient();
    for (const auto& [e, c] : restricted.terms()) {
      if (std::abs(c) > tol_rank * mx) {
        if (d0 < 0 || e.degree() < d0) d0 = e.degree();
        break;  // graded order: first surviving term has the lowest degree
      }
    }
  }
  if (d0 < 0) {
    throw InconclusiveError("corank_drop_order: F vanishes on the kernel directions");
  }
  if (d0 < 2) throw InconclusiveError("corank_drop_order: x0 is not a root");
  return d0 - 1;
}

}  // namespace hod
