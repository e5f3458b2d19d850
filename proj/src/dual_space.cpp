#include "hod/dual_space.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hod/errors.h"
#include "hod/kernels.h"

namespace hod {

MonomialFrame::MonomialFrame(std::size_t nvars, int degree)
    : nvars_(nvars), degree_(degree), exps_(monomials_up_to(nvars, degree)) {
  for (std::size_t i = 0; i < exps_.size(); ++i) index_.emplace(exps_[i], i);
}

std::size_t MonomialFrame::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw ArgumentError("exponent " + e.to_string() + " not in frame");
  return it->second;
}

std::string to_string(DualMethod m) { return m == DualMethod::DZ ? "dz" : "st"; }

namespace {

void check_point(const PolySystem& F, const Point& x0) {
  if (x0.size() != F.nvars()) {
    throw DimensionError("point has " + std::to_string(x0.size()) + " coordinates, system has " +
                         std::to_string(F.nvars()) + " variables");
  }
}

void check_root(const PolySystem& F, const Point& x0, double tol) {
  const double r = relative_residual(F, x0);
  if (r > tol) {
    std::ostringstream os;
    os << "point is not a root: relative residual " << r << " exceeds " << tol;
    throw NotARootError(os.str());
  }
}

// Largest coefficient of F. The DZ/ST entries are Taylor coefficients of
// F at x0, so values far below this are roundoff from the translation.
double coefficient_scale(const PolySystem& F) {
  double s = 0.0;
  for (const auto& f : F.polys()) s = std::max(s, f.max_abs_coefficient());
  return s;
}

std::vector<Polynomial> shifted_generators(const PolySystem& F, const Point& x0) {
  std::vector<Polynomial> out;
  out.reserve(F.size());
  for (const auto& f : F.polys()) out.push_back(translate(f, x0));
  return out;
}

// Kernel columns are indexed by frame exponents 1..; Delta_0 is prepended.
DualBasis basis_from_kernel(const Point& x0, const MonomialFrame& frame, const CMatrix& K,
                            double tol) {
  DualBasis b;
  b.basepoint = x0;
  b.elements.push_back(Functional::delta(x0, Exponent(x0.size())));
  for (Eigen::Index k = 0; k < K.cols(); ++k) {
    const double mx = K.col(k).cwiseAbs().maxCoeff();
    Polynomial::TermMap terms;
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
      if (std::abs(K(i, k)) > tol * mx) terms.emplace(frame[static_cast<std::size_t>(i) + 1], K(i, k));
    }
    b.elements.emplace_back(x0, std::move(terms));
  }
  return b;
}

std::string near_threshold_warning(int d, const RankReport& r) {
  std::ostringstream os;
  bool near = false;
  for (double s : r.singular_values) {
    if (s > r.threshold * 1e-2 && s < r.threshold * 1e2) near = true;
  }
  if (!near) return {};
  os << "degree " << d << ": singular values within two decades of the rank threshold "
     << r.threshold << ":";
  for (double s : r.singular_values) os << ' ' << s;
  return os.str();
}

template <typename BuildMatrix>
MultiplicityReport incremental(const PolySystem& F, const Point& x0, const DualSpaceOptions& opts,
                               DualMethod method, BuildMatrix&& build) {
  check_point(F, x0);
  if (opts.max_d < 1) throw ArgumentError("max_d must be at least 1");
  check_root(F, x0, opts.tol);
  MultiplicityReport rep;
  rep.method = method;
  rep.order_used = opts.order;
  std::vector<int> dims{1};
  CMatrix prev_kernel(0, 0);
  const double scale = coefficient_scale(F);
  for (int d = 1; d <= opts.max_d; ++d) {
    const CMatrix M = build(d);
    auto kr = kernel_with_rank(M, opts.tol, scale);
    if (auto w = near_threshold_warning(d, kr.rank); !w.empty()) rep.warnings.push_back(w);
    rep.per_degree_rank.push_back(kr.rank);
    dims.push_back(1 + kr.rank.corank);
    if (dims[d] == dims[d - 1]) {
      rep.dual_basis = basis_from_kernel(x0, MonomialFrame(F.nvars(), d - 1), prev_kernel, opts.tol);
      rep.dual_basis.degree = d;
      rep.dual_basis.per_degree_dims = dims;
      rep.multiplicity = dims[d];
      auto is = initial_support(rep.dual_basis, opts.order, opts.tol);
      rep.initial_support = std::move(is.initial_support);
      rep.standard_monomials = std::move(is.standard_monomials);
      return rep;
    }
    prev_kernel = std::move(kr.basis);
  }
  std::ostringstream os;
  os << "dual space did not stabilise by degree " << opts.max_d
     << "; the root may not be isolated (dims:";
  for (int v : dims) os << ' ' << v;
  os << ')';
  throw NonIsolatedError(os.str(), dims);
}

}  // namespace

CMatrix build_mdz(const PolySystem& F, const Point& x0, int d) {
  check_point(F, x0);
  if (d < 1) throw ArgumentError("build_mdz: d must be at least 1");
  const auto shifted = shifted_generators(F, x0);
  const auto rows = monomials_up_to(F.nvars(), d - 1);
  const auto cols = MonomialFrame(F.nvars(), d).nonzero();
  return kernels::assemble_mdz(shifted, rows, cols);
}

MultiplicityReport dual_space_dz(const PolySystem& F, const Point& x0, double tol, int max_d) {
  DualSpaceOptions o;
  o.tol = tol;
  o.max_d = max_d;
  return dual_space_dz(F, x0, o);
}

MultiplicityReport dual_space_dz(const PolySystem& F, const Point& x0,
                                 const DualSpaceOptions& opts) {
  check_point(F, x0);
  const auto shifted = shifted_generators(F, x0);
  return incremental(F, x0, opts, DualMethod::DZ, [&](int d) {
    const auto rows = monomials_up_to(F.nvars(), d - 1);
    const auto cols = MonomialFrame(F.nvars(), d).nonzero();
    return kernels::assemble_mdz(shifted, rows, cols);
  });
}

CMatrix build_sigma(std::size_t var, int d, std::size_t nvars) {
  if (d < 2) throw ArgumentError("build_sigma: d must be at least 2");
  if (var >= nvars) throw DimensionError("build_sigma: variable index out of range");
  const MonomialFrame lower(nvars, d - 1);
  const MonomialFrame upper(nvars, d);
  CMatrix S = CMatrix::Zero(static_cast<Eigen::Index>(lower.size() - 1),
                            static_cast<Eigen::Index>(upper.size() - 1));
  for (std::size_t c = 1; c < upper.size(); ++c) {
    const Exponent& beta = upper[c];
    if (beta[var] == 0) continue;
    Exponent gamma = beta;
    gamma.set(var, beta[var] - 1);
    if (gamma.is_zero()) continue;
    S(static_cast<Eigen::Index>(lower.index_of(gamma) - 1), static_cast<Eigen::Index>(c - 1)) = 1.0;
  }
  return S;
}

MultiplicityReport dual_space_st(const PolySystem& F, const Point& x0, double tol, int max_d) {
  DualSpaceOptions o;
  o.tol = tol;
  o.max_d = max_d;
  return dual_space_st(F, x0, o);
}

MultiplicityReport dual_space_st(const PolySystem& F, const Point& x0,
                                 const DualSpaceOptions& opts) {
  check_point(F, x0);
  const auto shifted = shifted_generators(F, x0);
  const std::size_t n = F.nvars();
  const std::vector<Exponent> origin{Exponent(n)};
  const double scale = coefficient_scale(F);
  CMatrix previous;
  return incremental(F, x0, opts, DualMethod::ST, [&](int d) {
    const auto cols = MonomialFrame(n, d).nonzero();
    CMatrix top = kernels::assemble_mdz(shifted, origin, cols);
    if (d == 1) {
      previous = top;
      return top;
    }
    const CMatrix pruned = prune_rows(previous, opts.tol, scale);
    const Eigen::Index block = pruned.rows();
    CMatrix M(top.rows() + block * static_cast<Eigen::Index>(n), top.cols());
    M.topRows(top.rows()) = top;
    for (std::size_t j = 0; j < n; ++j) {
      M.middleRows(top.rows() + static_cast<Eigen::Index>(j) * block, block) =
          pruned * build_sigma(j, d, n);
    }
    previous = M;
    return M;
  });
}

CVector to_frame_vector(const Functional& L, const MonomialFrame& frame) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(frame.size()));
  for (const auto& [e, c] : L.terms()) v[static_cast<Eigen::Index>(frame.index_of(e))] = c;
  return v;
}

InitialSupport initial_support(const DualBasis& basis, const MonomialOrder& order, double tol) {
  if (basis.elements.empty()) throw DegenerateBasisError("initial_support: empty basis");
  std::vector<Exponent> cols;
  for (const auto& L : basis.elements) {
    for (const auto& [e, c] : L.terms()) {
      if (std::find(cols.begin(), cols.end(), e) == cols.end()) cols.push_back(e);
    }
  }
  // Descending by the global order.
  std::sort(cols.begin(), cols.end(),
            [&](const Exponent& a, const Exponent& b) { return order.compare(a, b) > 0; });
  const auto mu = static_cast<Eigen::Index>(basis.elements.size());
  const auto K = static_cast<Eigen::Index>(cols.size());
  CMatrix C = CMatrix::Zero(mu, K);
  for (Eigen::Index r = 0; r < mu; ++r) {
    for (const auto& [e, c] : basis.elements[static_cast<std::size_t>(r)].terms()) {
      C(r, std::find(cols.begin(), cols.end(), e) - cols.begin()) = c;
    }
  }
  const double scale = C.cwiseAbs().maxCoeff();
  std::vector<bool> used(static_cast<std::size_t>(mu), false);
  InitialSupport out;
  for (Eigen::Index c = 0; c < K && static_cast<Eigen::Index>(out.initial_support.size()) < mu; ++c) {
    Eigen::Index piv = -1;
    double best = tol * scale;
    for (Eigen::Index r = 0; r < mu; ++r) {
      if (!used[static_cast<std::size_t>(r)] && std::abs(C(r, c)) > best) {
        best = std::abs(C(r, c));
        piv = r;
      }
    }
    if (piv < 0) continue;
    used[static_cast<std::size_t>(piv)] = true;
    for (Eigen::Index r = 0; r < mu; ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      const cplx f = C(r, c) / C(piv, c);
      C.row(r) -= f * C.row(piv);
      C(r, c) = 0.0;
    }
    out.initial_support.push_back(cols[static_cast<std::size_t>(c)]);
  }
  if (static_cast<Eigen::Index>(out.initial_support.size()) != mu) {
    throw DegenerateBasisError("initial_support: basis is numerically dependent");
  }
  std::sort(out.initial_support.begin(), out.initial_support.end(), GradedLexLess{});
  out.standard_monomials = out.initial_support;
  return out;
}

}  // namespace hod
