#include "hod/exponent.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hod/errors.h"

namespace hod {

namespace {

void check_nonnegative(const std::vector<int>& e) {
  for (int v : e) {
    if (v < 0) throw ArgumentError("exponent entries must be non-negative");
  }
}

void check_same_size(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) {
    throw DimensionError("exponent length mismatch: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

}  // namespace

Exponent::Exponent(std::initializer_list<int> entries) : e_(entries) {
  check_nonnegative(e_);
}

Exponent::Exponent(std::vector<int> entries) : e_(std::move(entries)) {
  check_nonnegative(e_);
}

Exponent Exponent::unit(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DimensionError("unit exponent index out of range");
  Exponent e(nvars);
  e.e_[i] = 1;
  return e;
}

void Exponent::set(std::size_t i, int value) {
  if (value < 0) throw ArgumentError("exponent entries must be non-negative");
  e_.at(i) = value;
}

int Exponent::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

bool Exponent::is_zero() const {
  for (int v : e_) {
    if (v != 0) return false;
  }
  return true;
}

bool Exponent::divides(const Exponent& other) const {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Exponent Exponent::operator+(const Exponent& other) const {
  check_same_size(*this, other);
  Exponent r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += other.e_[i];
  return r;
}

Exponent Exponent::operator-(const Exponent& other) const {
  check_same_size(*this, other);
  Exponent r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] -= other.e_[i];
    if (r.e_[i] < 0) throw ArgumentError("exponent difference would be negative");
  }
  return r;
}

double Exponent::factorial() const {
  double f = 1.0;
  for (int v : e_) {
    for (int k = 2; k <= v; ++k) f *= k;
  }
  return f;
}

std::string Exponent::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) os << ',';
    os << e_[i];
  }
  os << ')';
  return os.str();
}

std::strong_ordering graded_lex_compare(const Exponent& a, const Exponent& b) {
  check_same_size(a, b);
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  return graded_lex_compare(a, b) < 0;
}

MonomialOrder MonomialOrder::weighted(std::vector<long> weights) {
  for (long w : weights) {
    if (w < 0) throw ArgumentError("weights of a global order must be non-negative");
  }
  MonomialOrder o;
  o.kind_ = Kind::Weighted;
  o.weights_ = std::move(weights);
  return o;
}

std::strong_ordering MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  check_same_size(a, b);
  if (kind_ == Kind::Weighted) {
    if (weights_.size() != a.size()) throw DimensionError("weight vector length mismatch");
    long wa = 0;
    long wb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      wa += weights_[i] * a[i];
      wb += weights_[i] * b[i];
    }
    if (auto c = wa <=> wb; c != 0) return c;
  }
  return graded_lex_compare(a, b);
}

std::string MonomialOrder::to_string() const {
  if (kind_ == Kind::GradedLex) return "graded-lex";
  std::ostringstream os;
  os << "weighted(";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) os << ',';
    os << weights_[i];
  }
  os << ')';
  return os.str();
}

std::strong_ordering compare_monomials(const Exponent& a, const Exponent& b,
                                       const MonomialOrder& order) {
  return order.compare(a, b);
}

namespace {

void fill_degree(std::size_t pos, int remaining, std::vector<int>& cur,
                 std::vector<Exponent>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    fill_degree(pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t nvars, int k) {
  std::vector<Exponent> out;
  if (k < 0) return out;
  if (nvars == 0) {
    if (k == 0) out.emplace_back(std::size_t{0});
    return out;
  }
  std::vector<int> cur(nvars, 0);
  fill_degree(0, k, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, int d) {
  std::vector<Exponent> out;
  for (int k = 0; k <= d; ++k) {
    auto block = monomials_of_degree(nvars, k);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace hod
