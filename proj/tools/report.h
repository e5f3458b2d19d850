#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hod/dual_space.h"
#include "hod/solver.h"

namespace hod::cli {

struct RunConfig {
  std::string command;  // multiplicity, predict-order, deflate, solve, matrix
  DualMethod method = DualMethod::DZ;
  OrderPolicy policy = OrderPolicy::Auto;
  int fixed_order = 1;
  double tol_rank = kDefaultRankTol;
  double tol_coeff = 1e-4;
  std::uint64_t seed = 0;
  int max_stages = 10;
  bool json = false;
  bool truncated = false;      // matrix: columns of top degree only
  bool row_multiples = false;  // matrix --truncated: rows x^alpha f_j as well
  bool precompute_multiplicity = false;
  std::vector<long> weights;  // multiplicity: weighted order for the initial support
};

struct RunOutput {
  int exit_code = 0;
  std::string out;  // report (stdout)
  std::string err;  // diagnostics (stderr)
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitDimension = 3;

/// Runs one command on system/point text. Never throws for bad input; the
/// exit code and err carry the failure.
RunOutput run(const RunConfig& config, const std::string& system_text,
              const std::optional<std::string>& point_text);

/// Removes the "timings" block from a JSON report.
std::string strip_timings(const std::string& json_report);

}  // namespace hod::cli
