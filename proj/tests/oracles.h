// Reference computations that share no code with the library: a dense
// exponent-map polynomial, the Leibniz rule, staircase counting for monomial
// ideals, and principal angles through JacobiSVD.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "hod/polynomial.h"

namespace oracle {

using Exp = std::vector<int>;
using Poly = std::map<Exp, double>;

inline Poly term(double c, Exp e) { return Poly{{std::move(e), c}}; }

inline Poly add(const Poly& a, const Poly& b, double sb = 1.0) {
  Poly r = a;
  for (const auto& [e, c] : b) r[e] += sb * c;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exp e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
  return r;
}

// One variable at a time, power rule.
inline Poly diff1(const Poly& p, std::size_t var) {
  Poly r;
  for (const auto& [e, c] : p) {
    if (e[var] == 0) continue;
    Exp f = e;
    f[var] -= 1;
    r[f] += c * e[var];
  }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
  return r;
}

inline Poly diff(Poly p, const Exp& beta) {
  for (std::size_t i = 0; i < beta.size(); ++i) {
    for (int k = 0; k < beta[i]; ++k) p = diff1(p, i);
  }
  return p;
}

inline double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// d^beta (x^alpha f) = sum_{gamma <= beta} C(beta, gamma) d^gamma x^alpha d^(beta-gamma) f.
inline Poly leibniz_entry(const Poly& f, const Exp& alpha, const Exp& beta) {
  const std::size_t n = beta.size();
  Poly out;
  Exp gamma(n, 0);
  for (;;) {
    double binom = 1.0;
    for (std::size_t i = 0; i < n; ++i) binom *= choose(beta[i], gamma[i]);
    Exp rest(n);
    for (std::size_t i = 0; i < n; ++i) rest[i] = beta[i] - gamma[i];
    const Poly part = mul(diff(term(1.0, alpha), gamma), diff(f, rest));
    out = add(out, part, binom);
    std::size_t i = 0;
    while (i < n && gamma[i] == beta[i]) gamma[i++] = 0;
    if (i == n) break;
    ++gamma[i];
  }
  return out;
}

inline hod::Polynomial to_hod(const Poly& p, std::size_t n) {
  hod::Polynomial r(n);
  for (const auto& [e, c] : p) r.add_term(hod::Exponent(e), c);
  return r;
}

// Number of monomials outside the ideal generated by `gens`. Every variable
// needs a pure power among the generators, otherwise the count is infinite
// and -1 is returned.
inline int staircase_count(const std::vector<Exp>& gens, std::size_t n) {
  Exp bound(n, -1);
  for (const auto& g : gens) {
    int nz = 0;
    std::size_t var = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] > 0) {
        ++nz;
        var = i;
      }
    }
    if (nz == 1 && (bound[var] < 0 || g[var] < bound[var])) bound[var] = g[var];
  }
  for (int b : bound) {
    if (b < 0) return -1;
  }
  int count = 0;
  Exp e(n, 0);
  for (;;) {
    const bool in_ideal = std::any_of(gens.begin(), gens.end(), [&](const Exp& g) {
      for (std::size_t i = 0; i < n; ++i) {
        if (g[i] > e[i]) return false;
      }
      return true;
    });
    if (!in_ideal) ++count;
    std::size_t i = 0;
    while (i < n && e[i] + 1 == bound[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return count;
}

// Principal angles through orthonormal bases from HouseholderQR. Cosines
// come from the cross-Gram matrix, sines from the part of V outside span(U);
// each angle is read from whichever is better conditioned.
inline std::vector<double> principal_angles(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  if (U.cols() == 0 || V.cols() == 0) return {};
  auto orth = [](const Eigen::MatrixXcd& M) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
    return Eigen::MatrixXcd(qr.householderQ() * Eigen::MatrixXcd::Identity(M.rows(), M.cols()));
  };
  Eigen::MatrixXcd Qu = orth(U), Qv = orth(V);
  if (Qu.cols() < Qv.cols()) std::swap(Qu, Qv);
  const Eigen::MatrixXcd C = Qu.adjoint() * Qv;
  Eigen::JacobiSVD<Eigen::MatrixXcd> cs(C);
  Eigen::JacobiSVD<Eigen::MatrixXcd> ss(Eigen::MatrixXcd(Qv - Qu * C));
  const Eigen::Index k = Qv.cols();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < k; ++i) {
    // cosines descend, sines descend: pair the i-th cosine with the
    // (k-1-i)-th sine
    const double c = std::min(1.0, cs.singularValues()[i]);
    const double s = std::min(1.0, ss.singularValues()[k - 1 - i]);
    out.push_back(c > std::sqrt(0.5) ? std::asin(s) : std::acos(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random monomial ideal in n variables with every pure power present.
struct MonomialIdeal {
  std::size_t n = 2;
  std::vector<Exp> gens;
};

inline MonomialIdeal random_monomial_ideal(std::mt19937_64& g, std::size_t n) {
  std::uniform_int_distribution<int> pure(2, n == 2 ? 4 : 3);
  MonomialIdeal I;
  I.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    Exp e(n, 0);
    e[i] = pure(g);
    I.gens.push_back(e);
  }
  std::uniform_int_distribution<int> extra(0, 2);
  const int k = extra(g);
  for (int j = 0; j < k; ++j) {
    Exp e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::uniform_int_distribution<int>(0, 2)(g);
    int deg = 0;
    for (int v : e) deg += v;
    if (deg >= 2) I.gens.push_back(e);
  }
  return I;
}

}  // namespace oracle
