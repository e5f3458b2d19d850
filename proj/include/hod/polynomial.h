#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hod/exponent.h"

namespace hod {

using cplx = std::complex<double>;

/// Coordinates of a point in C^n.
using Point = std::vector<cplx>;

/// Sparse polynomial in nvars variables with complex coefficients.
///
/// Terms are kept in graded-lex order and no stored coefficient is exactly
/// zero, so two polynomials compare equal iff their term maps are equal.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, cplx, GradedLexLess>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, cplx c);
  static Polynomial monomial(const Exponent& e, cplx c = 1.0);
  static Polynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  cplx coefficient(const Exponent& e) const;

  // Adds c*x^e, dropping the term when the sum is exactly zero.
  void add_term(const Exponent& e, cplx c);

  // -1 for the zero polynomial.
  int total_degree() const;
  // Lowest total degree in the support; -1 for the zero polynomial.
  int min_degree() const;
  double max_abs_coefficient() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned k) const;

  // Same polynomial viewed in more variables (new ones appended, unused).
  Polynomial extended(std::size_t nvars) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Exact mixed partial derivative d^beta p.
Polynomial differentiate(const Polynomial& p, const Exponent& beta);

/// x^alpha * p.
Polynomial monomial_multiply(const Polynomial& p, const Exponent& alpha);

/// Sum of terms in graded-lex order.
cplx evaluate(const Polynomial& p, std::span<const cplx> pt);

/// sum |c_e| * prod max(1,|x_i|)^e_i, the size of the terms of p at pt.
double evaluation_scale(const Polynomial& p, std::span<const cplx> pt);

/// q(y) = p(y + shift); q's coefficients are the scaled Taylor
/// coefficients of p at shift.
Polynomial translate(const Polynomial& p, std::span<const cplx> shift);

/// q(y_1..y_c) = p(origin + sum_k y_k * directions[k]), each direction of
/// length p.nvars().
Polynomial substitute_affine(const Polynomial& p, std::span<const cplx> origin,
                             const std::vector<std::vector<cplx>>& directions);

/// N equations in n unknowns.
class PolySystem {
 public:
  PolySystem() = default;
  PolySystem(std::vector<Polynomial> polys, std::vector<std::string> var_names);
  explicit PolySystem(std::vector<Polynomial> polys);

  std::size_t nvars() const { return var_names_.size(); }
  std::size_t size() const { return polys_.size(); }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
  const std::vector<std::string>& var_names() const { return var_names_; }

  friend bool operator==(const PolySystem&, const PolySystem&) = default;

 private:
  std::vector<Polynomial> polys_;
  std::vector<std::string> var_names_;
};

std::vector<std::string> default_var_names(std::size_t nvars);

std::vector<cplx> evaluate(const PolySystem& F, std::span<const cplx> pt);

/// Euclidean norm of F(pt).
double residual_norm(const PolySystem& F, std::span<const cplx> pt);

/// max_j |f_j(pt)| / evaluation_scale(f_j, pt).
double relative_residual(const PolySystem& F, std::span<const cplx> pt);

/// Coefficients of H(t) = F(x0 + gamma t), one map per equation.
struct UnivariateSupport {
  std::vector<std::map<int, cplx>> coeffs;
  std::vector<double> max_magnitude;
};

UnivariateSupport substitute_line(const PolySystem& F, std::span<const cplx> x0,
                                  std::span<const cplx> gamma);

/// L = sum c_alpha Delta_alpha at a basepoint, where
/// Delta_alpha(f) = (1/alpha!) d^alpha f (basepoint).
class Functional {
 public:
  Functional() = default;
  Functional(Point basepoint, Polynomial::TermMap terms);

  static Functional delta(const Point& basepoint, const Exponent& alpha);

  std::size_t nvars() const { return basepoint_.size(); }
  const Point& basepoint() const { return basepoint_; }
  const Polynomial::TermMap& terms() const { return terms_; }
  std::vector<Exponent> support() const;

 private:
  Point basepoint_;
  Polynomial::TermMap terms_;
};

cplx apply_functional(const Functional& L, const Polynomial& p);

}  // namespace hod
