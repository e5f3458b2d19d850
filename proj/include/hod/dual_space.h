#pragma once

#include <map>
#include <string>
#include <vector>

#include "hod/exponent.h"
#include "hod/linalg.h"
#include "hod/polynomial.h"

namespace hod {

/// All exponents of total degree <= d in n variables with an index lookup.
/// Order: degree ascending, x1-major within a degree; index 0 is the zero
/// exponent. Dual-space matrix columns use this order with index 0 dropped.
class MonomialFrame {
 public:
  MonomialFrame(std::size_t nvars, int degree);

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<Exponent>& exponents() const { return exps_; }
  const Exponent& operator[](std::size_t i) const { return exps_[i]; }
  // Exponents with index >= 1.
  std::vector<Exponent> nonzero() const { return {exps_.begin() + 1, exps_.end()}; }
  // Throws ArgumentError when e is not in the frame.
  std::size_t index_of(const Exponent& e) const;
  bool contains(const Exponent& e) const { return index_.count(e) != 0; }

 private:
  std::size_t nvars_;
  int degree_;
  std::vector<Exponent> exps_;
  std::map<Exponent, std::size_t, GradedLexLess> index_;
};

struct DualBasis {
  Point basepoint;
  int degree = 0;                   // last degree examined
  std::vector<Functional> elements;  // Delta_0 first
  std::vector<int> per_degree_dims;  // dim D^(k), k = 0..degree
};

enum class DualMethod { DZ, ST };

std::string to_string(DualMethod m);

struct MultiplicityReport {
  int multiplicity = 0;
  DualBasis dual_basis;
  std::vector<Exponent> initial_support;
  std::vector<Exponent> standard_monomials;
  MonomialOrder order_used;
  DualMethod method = DualMethod::DZ;
  std::vector<RankReport> per_degree_rank;  // one per degree d >= 1
  std::vector<std::string> warnings;
};

struct DualSpaceOptions {
  double tol = kDefaultRankTol;
  int max_d = 16;
  MonomialOrder order = MonomialOrder::graded_lex();
};

/// Rows (x-x0)^alpha f_j for |alpha| < d (alpha-major), columns Delta_beta for
/// 0 < |beta| <= d in MonomialFrame order.
CMatrix build_mdz(const PolySystem& F, const Point& x0, int d);

/// Incremental dual space from the kernels of build_mdz.
MultiplicityReport dual_space_dz(const PolySystem& F, const Point& x0,
                                 double tol = kDefaultRankTol, int max_d = 16);
MultiplicityReport dual_space_dz(const PolySystem& F, const Point& x0,
                                 const DualSpaceOptions& opts);

/// Matrix of the anti-derivation sigma_j from degree-d functionals to
/// degree-(d-1) functionals; var is 0-based.
CMatrix build_sigma(std::size_t var, int d, std::size_t nvars);

/// Incremental dual space from the closedness blocks prune(M^(d-1)) S_j.
MultiplicityReport dual_space_st(const PolySystem& F, const Point& x0,
                                 double tol = kDefaultRankTol, int max_d = 16);
MultiplicityReport dual_space_st(const PolySystem& F, const Point& x0,
                                 const DualSpaceOptions& opts);

struct InitialSupport {
  std::vector<Exponent> initial_support;
  std::vector<Exponent> standard_monomials;
};

/// Leading exponents (w.r.t. the global order) of an echelonised basis.
InitialSupport initial_support(const DualBasis& basis, const MonomialOrder& order,
                               double tol = kDefaultRankTol);

/// Coefficient vector of a functional over the columns of a frame.
CVector to_frame_vector(const Functional& L, const MonomialFrame& frame);

}  // namespace hod
