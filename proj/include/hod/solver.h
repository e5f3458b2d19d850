#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hod/deflation.h"
#include "hod/errors.h"
#include "hod/linalg.h"
#include "hod/polynomial.h"

namespace hod {

struct NewtonOptions {
  double tol_residual = 1e-14;
  // Step test is relative for large iterates: |dx| <= tol_step * max(1, |x|).
  double tol_step = 1e-12;
  int max_iters = 100;
  // Regularity decisions use tol_rank; steps are solved with a much smaller
  // truncation so near-singular directions are not discarded.
  double tol_rank = kDefaultRankTol;
  double tol_solve = 1e-12;
  // Singular roots satisfy any residual test long before the iterate is
  // accurate; the driver turns this off and relies on the step test.
  bool stop_on_residual = true;
  // Halve steps that increase the residual (far starts only).
  bool backtracking = false;
  // Stop once a step is longer than the one before it: near a singular
  // root that only happens when roundoff has taken over. The longer step is
  // not taken.
  bool stop_on_stagnation = false;
};

/// Entry k holds iterate x_k, |F(x_k)| and the norm of the step that
/// produced x_k (0 for the start point).
struct NewtonTrace {
  std::vector<Point> iterates;
  std::vector<double> residual_norms;
  std::vector<double> step_norms;
  bool converged = false;
  bool stagnated = false;

  const Point& last() const { return iterates.back(); }
  int iterations() const { return static_cast<int>(iterates.size()) - 1; }
};

/// Gauss-Newton with minimum-norm least-squares steps J dx = -F.
NewtonTrace gauss_newton(const PolySystem& F, const Point& x0, const NewtonOptions& opts = {});

struct RegularityCheck {
  bool regular = false;
  RankReport rank;
};

RegularityCheck is_regular(const PolySystem& F, const Point& x, double tol_rank = kDefaultRankTol);

enum class OrderPolicy { Auto, Fixed, First };

struct DriverConfig {
  OrderPolicy policy = OrderPolicy::Auto;
  int fixed_order = 1;
  NewtonOptions newton;
  double tol_coeff = 1e-4;
  std::uint64_t seed = 0;
  int max_stages = 10;
  bool precompute_multiplicity = false;
  // Start points with a larger relative residual are rejected.
  double root_tol = 1e-3;
  // Rank decisions at a refined point use at least accuracy_factor times
  // the point's estimated relative accuracy (its last Newton step).
  double accuracy_factor = 10.0;
  // Escalation and first-order chains stop here with a DeflationFailure.
  int max_order = 4;
  std::size_t max_variables = 256;
};

struct StageInfo {
  int order = 1;
  double tol_rank = kDefaultRankTol;  // tolerance the construction used
  std::optional<OrderPrediction> prediction;
  bool escalated = false;
};

struct DriverResult {
  Point refined_point;   // original variables
  Point extended_point;  // all variables of the final system
  PolySystem final_system;
  std::vector<AugmentedSystem> stages;
  std::vector<StageInfo> stage_info;
  std::vector<RankReport> per_stage_rank;  // Jacobian rank of each system, original first
  std::vector<NewtonTrace> traces;         // refinement of each system, original first
  std::optional<int> multiplicity_before;
  bool final_regular = false;
  double final_residual = 0.0;  // |F(refined_point)| for the original F
  std::vector<std::string> warnings;
};

class DeflationFailure : public NumericalError {
 public:
  DeflationFailure(const std::string& what, DriverResult partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const DriverResult& partial() const { return partial_; }

 private:
  DriverResult partial_;
};

/// Refine, test regularity, deflate, repeat until the root is regular.
DriverResult deflation_driver(const PolySystem& F, const Point& x0, const DriverConfig& config);

}  // namespace hod
