#include <iostream>

#include <CLI11.hpp>

#include "hod/io.h"
#include "report.h"

using namespace hod;

namespace {

bool parse_order(const std::string& s, cli::RunConfig& c) {
  if (s == "auto") {
    c.policy = OrderPolicy::Auto;
  } else if (s == "first") {
    c.policy = OrderPolicy::First;
  } else {
    try {
      std::size_t used = 0;
      const int d = std::stoi(s, &used);
      if (used != s.size() || d < 1) return false;
      c.policy = OrderPolicy::Fixed;
      c.fixed_order = d;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicity structure and higher-order deflation for polynomial systems"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string system_path, point_path, method = "dz", order = "auto", format = "text";
  std::string weights;

  auto add_common = [&](CLI::App* sub, bool needs_point) {
    sub->add_option("system", system_path, "system file ('-' for stdin)")->required();
    auto* p = sub->add_option("point", point_path, "point file");
    if (needs_point) p->required();
    sub->add_option("--tol-rank", cfg.tol_rank, "relative rank tolerance")->capture_default_str();
    sub->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  auto* mult = app.add_subcommand("multiplicity", "dual space and multiplicity at a point");
  add_common(mult, true);
  mult->add_option("--method", method, "dz or st")->check(CLI::IsMember({"dz", "st"}));
  mult->add_option("--weights", weights, "weights for the initial support, e.g. 2,1");

  auto* pred = app.add_subcommand("predict-order", "minimal order of a corank-reducing deflation");
  add_common(pred, true);
  pred->add_option("--tol-coeff", cfg.tol_coeff, "relative coefficient tolerance");
  pred->add_option("--seed", cfg.seed, "random seed");

  auto* defl = app.add_subcommand("deflate", "one deflation step at a point");
  add_common(defl, true);
  defl->add_option("--order", order, "auto, first or an order d >= 1");
  defl->add_option("--tol-coeff", cfg.tol_coeff, "relative coefficient tolerance");
  defl->add_option("--seed", cfg.seed, "random seed");

  auto* solve = app.add_subcommand("solve", "refine and deflate until the root is regular");
  add_common(solve, true);
  solve->add_option("--order", order, "auto, first or an order d >= 1");
  solve->add_option("--tol-coeff", cfg.tol_coeff, "relative coefficient tolerance");
  solve->add_option("--seed", cfg.seed, "random seed");
  solve->add_option("--max-stages", cfg.max_stages, "stage cap")->check(CLI::PositiveNumber);
  solve->add_flag("--precompute-multiplicity", cfg.precompute_multiplicity,
                  "cap the stages at multiplicity - 1");

  auto* mat = app.add_subcommand("matrix", "symbolic deflation matrix");
  add_common(mat, false);
  mat->add_option("--order", order, "order d >= 1");
  mat->add_flag("--truncated", cfg.truncated, "only the columns of order d");
  mat->add_flag("--row-multiples", cfg.row_multiples, "with --truncated: rows x^a f_j too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitParse;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  cfg.method = method == "st" ? DualMethod::ST : DualMethod::DZ;
  cfg.json = format == "json";
  if (cfg.command == "matrix" && order == "auto") order = "1";
  if (!parse_order(order, cfg)) {
    std::cerr << "invalid --order '" << order << "'\n";
    return cli::kExitParse;
  }
  if (!weights.empty()) {
    std::stringstream ss(weights);
    for (std::string w; std::getline(ss, w, ',');) {
      try {
        cfg.weights.push_back(std::stol(w));
      } catch (const std::exception&) {
        std::cerr << "invalid --weights '" << weights << "'\n";
        return cli::kExitParse;
      }
    }
  }

  std::string system_text;
  std::optional<std::string> point_text;
  try {
    system_text = read_input(system_path);
    if (!point_path.empty()) point_text = read_input(point_path);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return cli::kExitParse;
  }
  const auto res = cli::run(cfg, system_text, point_text);
  std::cout << res.out;
  if (!res.err.empty()) std::cerr << res.err << "\n";
  return res.exit_code;
}
