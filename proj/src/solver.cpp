#include "hod/solver.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hod/dual_space.h"

namespace hod {

namespace {

double norm(const Point& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

bool finite(const Point& v) {
  return std::all_of(v.begin(), v.end(),
                     [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

// A rank decision cannot be sharper than the point it is made at.
double effective_tol(const NewtonTrace& tr, double tol_rank, double factor) {
  const double acc = tr.step_norms.back() / std::max(1.0, norm(tr.last()));
  return std::min(std::max(tol_rank, factor * acc), 1e-2);
}

}  // namespace

NewtonTrace gauss_newton(const PolySystem& F, const Point& x0, const NewtonOptions& opts) {
  if (x0.size() != F.nvars()) throw DimensionError("gauss_newton: point dimension");
  if (opts.max_iters < 1) throw ArgumentError("gauss_newton: max_iters must be >= 1");
  if (!(opts.tol_solve > 0.0 && opts.tol_solve < 1.0)) {
    throw ArgumentError("gauss_newton: tol_solve must lie in (0,1)");
  }
  const SymbolicMatrix J = jacobian(F);
  NewtonTrace tr;
  Point x = x0;
  double res = residual_norm(F, x);
  if (!std::isfinite(res)) throw NumericalError("gauss_newton: non-finite residual at start");
  tr.iterates.push_back(x);
  tr.residual_norms.push_back(res);
  tr.step_norms.push_back(0.0);
  if (opts.stop_on_residual && res <= opts.tol_residual) {
    tr.converged = true;
    return tr;
  }
  for (int it = 0; it < opts.max_iters; ++it) {
    const CMatrix Jx = J.evaluate(x);
    const auto Fx = evaluate(F, x);
    CVector rhs(static_cast<Eigen::Index>(Fx.size()));
    for (std::size_t i = 0; i < Fx.size(); ++i) rhs[static_cast<Eigen::Index>(i)] = -Fx[i];
    const auto ls = least_squares(Jx, rhs, opts.tol_solve);
    double scale = 1.0;
    Point next(x.size());
    double next_res = 0.0;
    for (int halvings = 0;; ++halvings) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        next[i] = x[i] + scale * ls.x[static_cast<Eigen::Index>(i)];
      }
      next_res = residual_norm(F, next);
      if (!opts.backtracking || next_res <= res || halvings == 30) break;
      scale *= 0.5;
    }
    if (!finite(next) || !std::isfinite(next_res)) {
      throw NumericalError("gauss_newton: iteration diverged (non-finite iterate)");
    }
    const double step = scale * ls.x.norm();
    if (opts.stop_on_stagnation && tr.step_norms.size() > 1 && step > tr.step_norms.back()) {
      tr.stagnated = true;
      tr.converged = true;
      break;
    }
    x = std::move(next);
    res = next_res;
    tr.iterates.push_back(x);
    tr.residual_norms.push_back(res);
    tr.step_norms.push_back(step);
    if ((opts.stop_on_residual && res <= opts.tol_residual) ||
        step <= opts.tol_step * std::max(1.0, norm(x))) {
      tr.converged = true;
      break;
    }
  }
  return tr;
}

RegularityCheck is_regular(const PolySystem& F, const Point& x, double tol_rank) {
  if (x.size() != F.nvars()) throw DimensionError("is_regular: point dimension");
  RegularityCheck out;
  out.rank = rank_at(jacobian(F), x, tol_rank);
  out.regular = out.rank.corank == 0;
  return out;
}

DriverResult deflation_driver(const PolySystem& F, const Point& x0, const DriverConfig& config) {
  if (x0.size() != F.nvars()) throw DimensionError("deflation_driver: point dimension");
  if (config.policy == OrderPolicy::Fixed && config.fixed_order < 1) {
    throw ArgumentError("deflation_driver: fixed order must be >= 1");
  }
  if (const double r = relative_residual(F, x0); r > config.root_tol) {
    std::ostringstream os;
    os << "deflation_driver: start point relative residual " << r << " exceeds " << config.root_tol;
    throw NotARootError(os.str());
  }
  Rng rng(config.seed);
  NewtonOptions refine = config.newton;
  refine.stop_on_residual = false;
  refine.stop_on_stagnation = true;
  const double tol_rank = config.newton.tol_rank;

  DriverResult res;
  int cap = config.max_stages;
  PolySystem sys = F;
  Point pt = x0;

  auto fail = [&](const std::string& why) {
    res.final_system = sys;
    res.extended_point = pt;
    res.refined_point.assign(pt.begin(), pt.begin() + static_cast<long>(F.nvars()));
    res.final_residual = residual_norm(F, res.refined_point);
    throw DeflationFailure("deflation_driver: " + why, std::move(res));
  };

  auto trace = gauss_newton(sys, pt, refine);
  pt = trace.last();
  double tol = effective_tol(trace, tol_rank, config.accuracy_factor);
  res.traces.push_back(std::move(trace));
  auto check = is_regular(sys, pt, tol);
  res.per_stage_rank.push_back(check.rank);

  if (config.precompute_multiplicity) {
    res.multiplicity_before = dual_space_dz(F, pt, tol).multiplicity;
    cap = std::min(cap, std::max(*res.multiplicity_before - 1, 0));
  }

  int escalate_to = 0;
  int attempts = 0;
  while (!check.regular) {
    if (static_cast<int>(res.stages.size()) >= cap || attempts >= config.max_stages + cap) {
      fail("stage cap of " + std::to_string(cap) + " reached with a singular root");
    }
    ++attempts;
    StageInfo info;
    info.tol_rank = tol;
    switch (config.policy) {
      case OrderPolicy::First:
        info.order = 1;
        break;
      case OrderPolicy::Fixed:
        info.order = config.fixed_order;
        break;
      case OrderPolicy::Auto:
        try {
          info.prediction = predict_order(sys, pt, tol, config.tol_coeff, rng);
          info.order = info.prediction->d;
        } catch (const InconclusiveError& e) {
          res.warnings.push_back(std::string("order prediction inconclusive, using d = 1: ") +
                                 e.what());
          info.order = 1;
        }
        break;
    }
    if (escalate_to > info.order) {
      info.order = escalate_to;
      info.escalated = true;
    }
    if (info.order > std::max(config.max_order, config.fixed_order)) {
      fail("order " + std::to_string(info.order) + " exceeds the order limit");
    }
    AugmentedSystem aug;
    try {
      aug = info.order == 1 ? deflate_first_order(sys, pt, tol, rng)
                            : deflate_higher_order(sys, info.order, pt, tol, rng);
    } catch (const OrderTooLowError& e) {
      res.warnings.push_back(std::string("escalating deflation order: ") + e.what());
      escalate_to = info.order + 1;
      continue;
    }
    if (aug.system.nvars() > config.max_variables) {
      fail("augmented system would have " + std::to_string(aug.system.nvars()) +
           " variables, above the limit of " + std::to_string(config.max_variables));
    }
    Point ext = pt;
    ext.insert(ext.end(), aug.multiplier_start.begin(), aug.multiplier_start.end());
    auto tr = gauss_newton(aug.system, ext, refine);
    const double next_tol = effective_tol(tr, tol_rank, config.accuracy_factor);
    const auto next_check = is_regular(aug.system, tr.last(), next_tol);
    if (!next_check.regular && config.policy != OrderPolicy::First &&
        next_check.rank.corank >= check.rank.corank) {
      res.warnings.push_back("order " + std::to_string(info.order) +
                             " deflation did not lower the corank; escalating");
      escalate_to = info.order + 1;
      continue;
    }
    escalate_to = 0;
    aug.stage = static_cast<int>(res.stages.size()) + 1;
    sys = aug.system;
    pt = tr.last();
    tol = next_tol;
    check = next_check;
    res.stages.push_back(std::move(aug));
    res.stage_info.push_back(info);
    res.traces.push_back(std::move(tr));
    res.per_stage_rank.push_back(check.rank);
  }
  res.final_regular = true;
  res.final_system = sys;
  res.extended_point = pt;
  res.refined_point.assign(pt.begin(), pt.begin() + static_cast<long>(F.nvars()));
  res.final_residual = residual_norm(F, res.refined_point);
  return res;
}

}  // namespace hod
