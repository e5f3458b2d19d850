#include "report.h"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "hod/deflation.h"
#include "hod/io.h"

namespace hod::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

json to_json(const Exponent& e) { return json(e.entries()); }

json to_json(const std::vector<Exponent>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(to_json(e));
  return a;
}

json to_json(const RankReport& r) {
  return {{"rank", r.rank},
          {"corank", r.corank},
          {"tol", r.tol_used},
          {"threshold", r.threshold},
          {"singular_values", r.singular_values}};
}

json to_json(const Functional& L) {
  json terms = json::array();
  for (const auto& [e, c] : L.terms()) {
    terms.push_back({{"exponent", to_json(e)}, {"coefficient", to_json(c)}});
  }
  return terms;
}

json system_json(const PolySystem& F) {
  json eqs = json::array();
  for (const auto& p : F.polys()) eqs.push_back(format_polynomial(p, F.var_names()));
  return {{"nvars", F.nvars()}, {"equations", F.size()}, {"var_names", F.var_names()},
          {"polynomials", eqs}};
}

std::string policy_name(OrderPolicy p) {
  switch (p) {
    case OrderPolicy::Auto: return "auto";
    case OrderPolicy::First: return "first";
    case OrderPolicy::Fixed: return "fixed";
  }
  return "auto";
}

json config_json(const RunConfig& c) {
  return {{"command", c.command},
          {"method", to_string(c.method)},
          {"order_policy", policy_name(c.policy)},
          {"fixed_order", c.fixed_order},
          {"tol_rank", c.tol_rank},
          {"tol_coeff", c.tol_coeff},
          {"seed", c.seed},
          {"max_stages", c.max_stages},
          {"truncated", c.truncated},
          {"row_multiples", c.row_multiples},
          {"precompute_multiplicity", c.precompute_multiplicity},
          {"weights", c.weights}};
}

json multiplicity_result(const RunConfig& c, const PolySystem& F, const Point& x0) {
  DualSpaceOptions opts;
  opts.tol = c.tol_rank;
  if (!c.weights.empty()) {
    if (c.weights.size() != F.nvars()) throw DimensionError("weights: one per variable needed");
    opts.order = MonomialOrder::weighted(c.weights);
  }
  const auto rep = c.method == DualMethod::DZ ? dual_space_dz(F, x0, opts) : dual_space_st(F, x0, opts);
  json basis = json::array();
  for (const auto& L : rep.dual_basis.elements) basis.push_back(to_json(L));
  json ranks = json::array();
  for (const auto& r : rep.per_degree_rank) ranks.push_back(to_json(r));
  return {{"multiplicity", rep.multiplicity},
          {"method", to_string(rep.method)},
          {"per_degree_dims", rep.dual_basis.per_degree_dims},
          {"per_degree_rank", ranks},
          {"order", rep.order_used.to_string()},
          {"initial_support", to_json(rep.initial_support)},
          {"standard_monomials", to_json(rep.standard_monomials)},
          {"basis", basis},
          {"warnings", rep.warnings}};
}

json prediction_json(const OrderPrediction& p) {
  return {{"d", p.d},
          {"support_degrees", std::vector<int>(p.support_degrees.begin(), p.support_degrees.end())},
          {"gamma", to_json(p.gamma)},
          {"tol_coeff", p.tol_coeff}};
}

json augmented_json(const AugmentedSystem& a) {
  return {{"kind", to_string(a.kind)},
          {"order", a.order},
          {"stage", a.stage},
          {"n_original", a.n_original},
          {"multiplier_count", a.multiplier_count},
          {"multiplier_labels", to_json(a.multiplier_labels)},
          {"multiplier_start", to_json(a.multiplier_start)},
          {"drawn_coefficients", to_json(a.drawn_coefficients)},
          {"rank", to_json(a.rank)},
          {"system", system_json(a.system)}};
}

json deflate_result(const RunConfig& c, const PolySystem& F, const Point& x0) {
  Rng rng(c.seed);
  json out;
  int d = 1;
  switch (c.policy) {
    case OrderPolicy::First: d = 1; break;
    case OrderPolicy::Fixed: d = c.fixed_order; break;
    case OrderPolicy::Auto: {
      const auto p = predict_order(F, x0, c.tol_rank, c.tol_coeff, rng);
      out["prediction"] = prediction_json(p);
      d = p.d;
      break;
    }
  }
  const auto aug = d == 1 ? deflate_first_order(F, x0, c.tol_rank, rng)
                          : deflate_higher_order(F, d, x0, c.tol_rank, rng);
  Point ext = x0;
  ext.insert(ext.end(), aug.multiplier_start.begin(), aug.multiplier_start.end());
  const auto reg = is_regular(aug.system, ext, c.tol_rank);
  out["augmented"] = augmented_json(aug);
  out["system_text"] = serialize(aug.system);
  out["extended_point"] = to_json(ext);
  out["jacobian_rank_at_start"] = to_json(reg.rank);
  return out;
}

json driver_json(const DriverResult& r) {
  json stages = json::array();
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    json s = augmented_json(r.stages[i]);
    s.erase("system");
    s["nvars"] = r.stages[i].system.nvars();
    s["equations"] = r.stages[i].system.size();
    s["escalated"] = r.stage_info[i].escalated;
    if (r.stage_info[i].prediction) s["prediction"] = prediction_json(*r.stage_info[i].prediction);
    stages.push_back(s);
  }
  json ranks = json::array();
  for (const auto& k : r.per_stage_rank) ranks.push_back(to_json(k));
  json newton = json::array();
  for (const auto& t : r.traces) {
    newton.push_back({{"iterations", t.iterations()},
                      {"converged", t.converged},
                      {"final_residual", t.residual_norms.back()},
                      {"final_step", t.step_norms.back()}});
  }
  json out = {{"final_regular", r.final_regular},
              {"stage_count", r.stages.size()},
              {"stages", stages},
              {"per_stage_rank", ranks},
              {"newton", newton},
              {"refined_point", to_json(r.refined_point)},
              {"extended_point", to_json(r.extended_point)},
              {"final_residual", r.final_residual},
              {"multiplicity_before", r.multiplicity_before ? json(*r.multiplicity_before) : json()},
              {"warnings", r.warnings}};
  if (r.final_regular) out["final_system"] = system_json(r.final_system);
  return out;
}

json matrix_result(const RunConfig& c, const PolySystem& F, const std::optional<Point>& x0) {
  const int d = c.policy == OrderPolicy::Fixed ? c.fixed_order : 1;
  const SymbolicMatrix A =
      c.truncated ? truncated_deflation_matrix(
                        F, d, c.row_multiples ? TruncatedRows::Multiples : TruncatedRows::Originals)
                  : deflation_matrix(F, d);
  json rows = json::array();
  for (const auto& l : A.row_labels()) {
    rows.push_back({{"equation", l.equation + 1}, {"alpha", to_json(l.alpha)}});
  }
  json entries = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      row.push_back(format_polynomial(A.at(i, j), F.var_names()));
    }
    entries.push_back(row);
  }
  json out = {{"order", d},
              {"rows", A.rows()},
              {"cols", A.cols()},
              {"row_labels", rows},
              {"col_labels", to_json(A.col_labels())},
              {"entries", entries}};
  if (x0) {
    const auto K = kernel_with_rank(A.evaluate(*x0), c.tol_rank, A.coefficient_scale());
    json kernel = json::array();
    for (Eigen::Index j = 0; j < K.basis.cols(); ++j) {
      std::vector<cplx> v(K.basis.col(j).data(), K.basis.col(j).data() + K.basis.rows());
      kernel.push_back(to_json(v));
    }
    out["rank_at_point"] = to_json(K.rank);
    out["kernel"] = kernel;
  }
  return out;
}

std::string fmt_c(cplx c) { return format_complex(c); }

std::string text_report(const RunConfig& c, const json& rep) {
  std::ostringstream os;
  const json& r = rep["result"];
  os << "command: " << c.command << "\n";
  os << "system: " << rep["system"]["equations"] << " equations in " << rep["system"]["nvars"]
     << " variables\n";
  if (c.command == "multiplicity") {
    os << "method: " << r["method"].get<std::string>() << "\n";
    os << "multiplicity: " << r["multiplicity"] << "\n";
    os << "dims per degree: " << r["per_degree_dims"].dump() << "\n";
    os << "initial support (" << r["order"].get<std::string>() << "): " << r["initial_support"].dump()
       << "\n";
  } else if (c.command == "predict-order") {
    os << "predicted order: " << r["d"] << "\n";
    os << "support degrees: " << r["support_degrees"].dump() << "\n";
  } else if (c.command == "deflate") {
    const json& a = r["augmented"];
    os << "construction: " << a["kind"].get<std::string>() << ", order " << a["order"] << "\n";
    os << "multipliers: " << a["multiplier_count"] << "\n";
    os << "jacobian corank at start: " << r["jacobian_rank_at_start"]["corank"] << "\n";
    os << r["system_text"].get<std::string>();
  } else if (c.command == "solve") {
    os << "final regular: " << (r["final_regular"].get<bool>() ? "yes" : "no") << "\n";
    os << "stages: " << r["stage_count"] << "\n";
    for (const auto& s : r["stages"]) {
      os << "  stage " << s["stage"] << ": " << s["kind"].get<std::string>() << ", order "
         << s["order"] << ", " << s["nvars"] << " variables\n";
    }
    os << "jacobian ranks:";
    for (const auto& k : r["per_stage_rank"]) os << " " << k["rank"];
    os << "\nrefined point:";
    for (const auto& v : r["refined_point"]) {
      os << " " << fmt_c({v[0].get<double>(), v[1].get<double>()});
    }
    os << "\nresidual: " << r["final_residual"].get<double>() << "\n";
  } else if (c.command == "matrix") {
    os << "deflation matrix of order " << r["order"] << ": " << r["rows"] << " x " << r["cols"]
       << "\n";
    os << "columns:";
    for (const auto& b : r["col_labels"]) os << " " << b.dump();
    os << "\n";
    std::size_t i = 0;
    for (const auto& row : r["entries"]) {
      const auto& lab = r["row_labels"][i++];
      os << "x^" << lab["alpha"].dump() << " f" << lab["equation"] << ":";
      for (const auto& e : row) os << " [" << e.get<std::string>() << "]";
      os << "\n";
    }
    if (r.contains("rank_at_point")) {
      os << "rank at point: " << r["rank_at_point"]["rank"] << "\n";
    }
  }
  for (const auto& w : r.value("warnings", json::array())) {
    os << "warning: " << w.get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace

std::string strip_timings(const std::string& json_report) {
  auto j = json::parse(json_report);
  j.erase("timings");
  return j.dump(2);
}

RunOutput run(const RunConfig& c, const std::string& system_text,
              const std::optional<std::string>& point_text) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutput out;
  json rep;
  rep["schema"] = "hodeflate.report";
  rep["schema_version"] = 1;
  rep["config"] = config_json(c);
  try {
    if (!(c.tol_rank > 0 && c.tol_rank < 1) || !(c.tol_coeff > 0 && c.tol_coeff < 1)) {
      throw ArgumentError("tolerances must lie in (0,1)");
    }
    if (c.policy == OrderPolicy::Fixed && c.fixed_order < 1) {
      throw ArgumentError("fixed order must be >= 1");
    }
    const PolySystem F = parse_system(system_text);
    rep["system"] = system_json(F);
    std::optional<Point> x0;
    if (point_text) x0 = parse_point(*point_text, F);
    rep["point"] = x0 ? to_json(*x0) : json();
    if (c.command != "matrix" && !x0) throw ArgumentError(c.command + " needs a point file");

    if (c.command == "multiplicity") {
      rep["result"] = multiplicity_result(c, F, *x0);
    } else if (c.command == "predict-order") {
      Rng rng(c.seed);
      rep["result"] = prediction_json(predict_order(F, *x0, c.tol_rank, c.tol_coeff, rng));
    } else if (c.command == "deflate") {
      rep["result"] = deflate_result(c, F, *x0);
    } else if (c.command == "solve") {
      DriverConfig dc;
      dc.policy = c.policy;
      dc.fixed_order = c.fixed_order;
      dc.newton.tol_rank = c.tol_rank;
      dc.tol_coeff = c.tol_coeff;
      dc.seed = c.seed;
      dc.max_stages = c.max_stages;
      dc.precompute_multiplicity = c.precompute_multiplicity;
      try {
        rep["result"] = driver_json(deflation_driver(F, *x0, dc));
      } catch (const DeflationFailure& e) {
        rep["result"] = driver_json(e.partial());
        throw;
      }
    } else if (c.command == "matrix") {
      rep["result"] = matrix_result(c, F, x0);
    } else {
      throw ArgumentError("unknown command '" + c.command + "'");
    }
    out.exit_code = kExitOk;
  } catch (const ParseError& e) {
    out.exit_code = kExitParse;
    out.err = std::string("parse error: ") + e.what();
  } catch (const ArgumentError& e) {
    out.exit_code = kExitParse;
    out.err = std::string("invalid arguments: ") + e.what();
  } catch (const DimensionError& e) {
    out.exit_code = kExitDimension;
    out.err = std::string("dimension mismatch: ") + e.what();
  } catch (const NumericalError& e) {
    out.exit_code = kExitNumerical;
    out.err = std::string("numerical failure: ") + e.what();
  }
  if (out.exit_code != kExitOk) {
    rep["error"] = {{"exit_code", out.exit_code}, {"message", out.err}};
    if (!rep.contains("result")) rep["result"] = json();
  }
  rep["timings"] = {{"total_seconds", std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count()}};
  if (c.json) {
    out.out = rep.dump(2) + "\n";
  } else if (out.exit_code == kExitOk) {
    out.out = text_report(c, rep);
  }
  return out;
}

}  // namespace hod::cli
