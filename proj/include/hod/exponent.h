#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hod {

/// Multi-index of non-negative integers, one entry per variable.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t nvars) : e_(nvars, 0) {}
  Exponent(std::initializer_list<int> entries);
  explicit Exponent(std::vector<int> entries);

  static Exponent unit(std::size_t nvars, std::size_t i);

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int value);
  int degree() const;
  bool is_zero() const;

  // Componentwise <=.
  bool divides(const Exponent& other) const;

  Exponent operator+(const Exponent& other) const;
  // Requires other.divides(*this).
  Exponent operator-(const Exponent& other) const;

  // Product of the factorials of the entries.
  double factorial() const;

  const std::vector<int>& entries() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  std::vector<int> e_;
};

// Graded lexicographic: total degree first, then lexicographic with x1 most
// significant. Strict weak ordering "a < b".
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

std::strong_ordering graded_lex_compare(const Exponent& a, const Exponent& b);

/// A global monomial order: graded-lex, or a non-negative integer weight
/// vector with graded-lex tie-break.
class MonomialOrder {
 public:
  enum class Kind { GradedLex, Weighted };

  static MonomialOrder graded_lex() { return MonomialOrder(); }
  static MonomialOrder weighted(std::vector<long> weights);

  Kind kind() const { return kind_; }
  const std::vector<long>& weights() const { return weights_; }
  std::strong_ordering compare(const Exponent& a, const Exponent& b) const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::GradedLex;
  std::vector<long> weights_;
};

std::strong_ordering compare_monomials(const Exponent& a, const Exponent& b,
                                       const MonomialOrder& order);

/// Exponents of total degree exactly k, x1-major (k,0,..,0) first.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, int k);

/// Exponents with total degree <= d: degree ascending, x1-major within a
/// degree. Index 0 is the zero exponent.
std::vector<Exponent> monomials_up_to(std::size_t nvars, int d);

/// binom(n, k) as a 64-bit count.
std::uint64_t binomial(int n, int k);

}  // namespace hod
