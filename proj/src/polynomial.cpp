#include "hod/polynomial.h"

#include <algorithm>
#include <cmath>

#include "hod/errors.h"

namespace hod {

namespace {

void check_nvars(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(a) +
                         " variables, got " + std::to_string(b));
  }
}

cplx ipow(cplx base, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

// Falling factorial e (e-1) ... (e-b+1).
double falling(int e, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r *= e - i;
  return r;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, cplx c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars), c);
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, cplx c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  return monomial(Exponent::unit(nvars, i));
}

cplx Polynomial::coefficient(const Exponent& e) const {
  check_nvars(nvars_, e.size(), "coefficient");
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx{} : it->second;
}

void Polynomial::add_term(const Exponent& e, cplx c) {
  check_nvars(nvars_, e.size(), "add_term");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int Polynomial::min_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_nvars(nvars_, o.nvars_, "operator+");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_nvars(nvars_, o.nvars_, "operator-");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  if (c == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    // Underflow can produce an exact zero.
    if (it->second == cplx{}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  r *= -1.0;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_nvars(a.nvars_, b.nvars_, "operator*");
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1.0);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::extended(std::size_t nvars) const {
  if (nvars < nvars_) throw DimensionError("cannot shrink the variable count");
  Polynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    std::vector<int> v(e.entries());
    v.resize(nvars, 0);
    r.add_term(Exponent(std::move(v)), c);
  }
  return r;
}

Polynomial differentiate(const Polynomial& p, const Exponent& beta) {
  check_nvars(p.nvars(), beta.size(), "differentiate");
  Polynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (!beta.divides(e)) continue;
    double f = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) f *= falling(e[i], beta[i]);
    r.add_term(e - beta, c * f);
  }
  return r;
}

Polynomial monomial_multiply(const Polynomial& p, const Exponent& alpha) {
  check_nvars(p.nvars(), alpha.size(), "monomial_multiply");
  Polynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e + alpha, c);
  return r;
}

cplx evaluate(const Polynomial& p, std::span<const cplx> pt) {
  check_nvars(p.nvars(), pt.size(), "evaluate");
  cplx sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    cplx t = c;
    for (std::size_t i = 0; i < e.size(); ++i) t *= ipow(pt[i], e[i]);
    sum += t;
  }
  return sum;
}

double evaluation_scale(const Polynomial& p, std::span<const cplx> pt) {
  check_nvars(p.nvars(), pt.size(), "evaluation_scale");
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = std::abs(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      t *= std::pow(std::max(1.0, std::abs(pt[i])), e[i]);
    }
    s += t;
  }
  return s;
}

Polynomial translate(const Polynomial& p, std::span<const cplx> shift) {
  check_nvars(p.nvars(), shift.size(), "translate");
  const std::size_t n = p.nvars();
  Polynomial r(n);
  std::vector<std::pair<std::vector<int>, cplx>> cur;
  std::vector<std::pair<std::vector<int>, cplx>> next;
  for (const auto& [e, c] : p.terms()) {
    cur.assign(1, {std::vector<int>(n, 0), c});
    for (std::size_t i = 0; i < n; ++i) {
      const int ei = e[i];
      if (ei == 0) continue;
      next.clear();
      for (const auto& [ex, co] : cur) {
        for (int k = shift[i] == cplx{} ? ei : 0; k <= ei; ++k) {
          auto ex2 = ex;
          ex2[i] = k;
          next.emplace_back(std::move(ex2),
                            co * static_cast<double>(binomial(ei, k)) * ipow(shift[i], ei - k));
        }
      }
      cur.swap(next);
    }
    for (auto& [ex, co] : cur) r.add_term(Exponent(std::move(ex)), co);
  }
  return r;
}

Polynomial substitute_affine(const Polynomial& p, std::span<const cplx> origin,
                             const std::vector<std::vector<cplx>>& directions) {
  const std::size_t n = p.nvars();
  check_nvars(n, origin.size(), "substitute_affine");
  const std::size_t c = directions.size();
  // x_i as a linear polynomial in y.
  std::vector<Polynomial> lin;
  lin.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial li = Polynomial::constant(c, origin[i]);
    for (std::size_t k = 0; k < c; ++k) {
      check_nvars(n, directions[k].size(), "substitute_affine direction");
      li.add_term(Exponent::unit(c, k), directions[k][i]);
    }
    lin.push_back(std::move(li));
  }
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Polynomial::constant(c, 1.0));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * lin[i]);
    return pw[k];
  };
  Polynomial r(c);
  for (const auto& [e, coef] : p.terms()) {
    Polynomial t = Polynomial::constant(c, coef);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 0) t = t * power(i, e[i]);
    }
    r += t;
  }
  return r;
}

std::vector<std::string> default_var_names(std::size_t nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

PolySystem::PolySystem(std::vector<Polynomial> polys, std::vector<std::string> var_names)
    : polys_(std::move(polys)), var_names_(std::move(var_names)) {
  if (polys_.empty()) throw ArgumentError("a polynomial system needs at least one equation");
  for (const auto& p : polys_) check_nvars(var_names_.size(), p.nvars(), "PolySystem");
}

PolySystem::PolySystem(std::vector<Polynomial> polys)
    : PolySystem(polys, default_var_names(polys.empty() ? 0 : polys.front().nvars())) {}

std::vector<cplx> evaluate(const PolySystem& F, std::span<const cplx> pt) {
  std::vector<cplx> v;
  v.reserve(F.size());
  for (const auto& p : F.polys()) v.push_back(evaluate(p, pt));
  return v;
}

double residual_norm(const PolySystem& F, std::span<const cplx> pt) {
  double s = 0.0;
  for (const auto& p : F.polys()) s += std::norm(evaluate(p, pt));
  return std::sqrt(s);
}

double relative_residual(const PolySystem& F, std::span<const cplx> pt) {
  double worst = 0.0;
  for (const auto& p : F.polys()) {
    const double scale = evaluation_scale(p, pt);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(evaluate(p, pt)) / scale);
  }
  return worst;
}

UnivariateSupport substitute_line(const PolySystem& F, std::span<const cplx> x0,
                                  std::span<const cplx> gamma) {
  const std::size_t n = F.nvars();
  check_nvars(n, x0.size(), "substitute_line point");
  check_nvars(n, gamma.size(), "substitute_line direction");
  if (std::all_of(gamma.begin(), gamma.end(), [](cplx g) { return g == cplx{}; })) {
    throw ArgumentError("substitute_line: degenerate (zero) direction");
  }
  auto mul = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  UnivariateSupport out;
  for (const auto& p : F.polys()) {
    std::vector<cplx> acc(1, 0.0);
    for (const auto& [e, c] : p.terms()) {
      std::vector<cplx> t(1, c);
      for (std::size_t i = 0; i < n; ++i) {
        const std::vector<cplx> lin{x0[i], gamma[i]};
        for (int k = 0; k < e[i]; ++k) t = mul(t, lin);
      }
      if (t.size() > acc.size()) acc.resize(t.size(), 0.0);
      for (std::size_t k = 0; k < t.size(); ++k) acc[k] += t[k];
    }
    std::map<int, cplx> m;
    double mx = 0.0;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k] != cplx{}) {
        m[static_cast<int>(k)] = acc[k];
        mx = std::max(mx, std::abs(acc[k]));
      }
    }
    out.coeffs.push_back(std::move(m));
    out.max_magnitude.push_back(mx);
  }
  return out;
}

Functional::Functional(Point basepoint, Polynomial::TermMap terms)
    : basepoint_(std::move(basepoint)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    check_nvars(basepoint_.size(), it->first.size(), "Functional");
    if (it->second == cplx{}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Functional Functional::delta(const Point& basepoint, const Exponent& alpha) {
  Polynomial::TermMap t;
  t.emplace(alpha, 1.0);
  return Functional(basepoint, std::move(t));
}

std::vector<Exponent> Functional::support() const {
  std::vector<Exponent> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

cplx apply_functional(const Functional& L, const Polynomial& p) {
  check_nvars(L.nvars(), p.nvars(), "apply_functional");
  cplx sum = 0.0;
  for (const auto& [alpha, c] : L.terms()) {
    sum += c * evaluate(differentiate(p, alpha), L.basepoint()) / alpha.factorial();
  }
  return sum;
}

}  // namespace hod
