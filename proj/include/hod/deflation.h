#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hod/exponent.h"
#include "hod/linalg.h"
#include "hod/polynomial.h"

namespace hod {

/// Seeded source of the random constants used by the constructions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // exp(2 pi i u).
  cplx unit_complex();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Row label x^alpha f_j of a deflation matrix (equation is 0-based).
struct RowLabel {
  std::size_t equation = 0;
  Exponent alpha;
};

/// Matrix with polynomial entries: rows x^alpha f_j, columns d^beta.
class SymbolicMatrix {
 public:
  SymbolicMatrix(std::size_t nvars, std::vector<RowLabel> rows, std::vector<Exponent> cols,
                 std::vector<Polynomial> entries);

  std::size_t nvars() const { return nvars_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(cols_.size()); }
  const std::vector<RowLabel>& row_labels() const { return rows_; }
  const std::vector<Exponent>& col_labels() const { return cols_; }
  const Polynomial& at(Eigen::Index i, Eigen::Index j) const {
    return entries_[static_cast<std::size_t>(i * cols() + j)];
  }
  const std::vector<Polynomial>& entries() const { return entries_; }

  CMatrix evaluate(std::span<const cplx> pt) const;
  // Largest coefficient magnitude over all entries; the natural size of the
  // evaluated matrix when the point has moderate coordinates.
  double coefficient_scale() const;

 private:
  std::size_t nvars_;
  std::vector<RowLabel> rows_;
  std::vector<Exponent> cols_;
  std::vector<Polynomial> entries_;
};

/// A[d](x): rows x^alpha f_j (|alpha| < d, alpha-major), columns d^beta
/// (0 < |beta| <= d), entries d^beta (x^alpha f_j).
SymbolicMatrix deflation_matrix(const PolySystem& F, int d);

/// The Jacobian, A[1].
SymbolicMatrix jacobian(const PolySystem& F);

enum class TruncatedRows {
  Originals,  // rows f_j only
  Multiples,  // rows x^alpha f_j, |alpha| < d
};

/// Columns d^beta with |beta| = d only.
SymbolicMatrix truncated_deflation_matrix(const PolySystem& F, int d,
                                          TruncatedRows rows = TruncatedRows::Originals);

/// Numerical rank of a symbolic matrix at a point, judged against
/// max(sigma_1, coefficient_scale).
RankReport rank_at(const SymbolicMatrix& A, std::span<const cplx> pt, double tol_rank);

/// Q = sum lambda_beta d^beta with constant coefficients.
class DeflationOperator {
 public:
  DeflationOperator(std::size_t nvars, Polynomial::TermMap coefficients, bool homogeneous = false);

  // Coefficients listed against MonomialFrame(n, d).nonzero(), or against the
  // degree-d monomials when homogeneous.
  static DeflationOperator from_vector(std::size_t nvars, int d, std::span<const cplx> coeffs,
                                       bool homogeneous = false);

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  bool homogeneous() const { return homogeneous_; }
  const Polynomial::TermMap& coefficients() const { return coeffs_; }

 private:
  std::size_t nvars_;
  int order_ = 0;
  bool homogeneous_;
  Polynomial::TermMap coeffs_;
};

Polynomial apply_operator(const DeflationOperator& Q, const Polynomial& p);

/// sum lambda_beta d^beta  <->  sum lambda_beta beta! Delta_beta.
Functional operator_to_functional(const DeflationOperator& Q, const Point& basepoint);
DeflationOperator functional_to_operator(const Functional& L);

enum class AugmentationKind { FirstOrderB, HigherOrderIndeterminate, FixedOperator };

std::string to_string(AugmentationKind k);

struct AugmentedSystem {
  PolySystem system;  // variables x_1..x_n, then the multipliers
  std::size_t n_original = 0;
  std::size_t multiplier_count = 0;
  int order = 1;
  int stage = 1;
  std::uint64_t seed = 0;
  std::vector<cplx> drawn_coefficients;  // B then b (first order), or b_{k,beta}
  AugmentationKind kind = AugmentationKind::FirstOrderB;
  std::vector<Exponent> multiplier_labels;  // beta for each lambda_beta (higher order)
  Point multiplier_start;                   // least-squares estimate at x0
  RankReport rank;                          // rank decision the construction used
};

struct OrderPrediction {
  int d = 1;
  std::set<int> support_degrees;
  std::vector<cplx> gamma;
  double tol_coeff = 1e-4;
};

/// Minimal order of a corank-reducing deflation from H(t) = F(x0 + gamma t),
/// gamma a random unit vector in ker A(x0).
OrderPrediction predict_order(const PolySystem& F, const Point& x0, double tol_rank,
                              double tol_coeff, Rng& rng);

/// F, A(x) B lambda = 0, <b, lambda> = 1. When rank A(x0) = n - 1, B is the
/// identity and lambda has n entries; otherwise B is n x (r+1).
AugmentedSystem deflate_first_order(const PolySystem& F, const Point& x0, double tol_rank,
                                    Rng& rng);

/// F, g_{j,alpha}(x, lambda) = sum_beta lambda_beta d^beta(x^alpha f_j), and
/// m = corank A[d](x0) scaling equations h_k.
AugmentedSystem deflate_higher_order(const PolySystem& F, int d, const Point& x0,
                                     double tol_rank, Rng& rng);

/// F and g_{j,alpha}(x) = Q (x^alpha f_j) for |alpha| < row_degree_bound
/// (defaults to d). No new variables.
AugmentedSystem deflate_with_operator(const PolySystem& F, const DeflationOperator& Q, int d,
                                      std::optional<int> row_degree_bound = std::nullopt);

/// d_0 - 1, d_0 the lowest degree in the support of F restricted to
/// x0 + ker A(x0).
int corank_drop_order(const PolySystem& F, const Point& x0, double tol_rank = kDefaultRankTol);

}  // namespace hod
