#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.h"
#include "hod/deflation.h"
#include "hod/solver.h"

using namespace hod;

namespace {

const Point kOrigin{0.0, 0.0};

PolySystem sys(const char* text) { return parse_system(text); }

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

Point perturbed(const Point& x, double size, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point y = x;
  for (auto& c : y) c += size * cplx(u(g), u(g));
  return y;
}

DriverConfig config(OrderPolicy p, std::uint64_t seed = 7) {
  DriverConfig c;
  c.policy = p;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("Newton on a regular root") {
  const auto tr = gauss_newton(sys("vars: x\nx - 1;"), Point{0.9});
  CHECK(tr.converged);
  CHECK(tr.iterations() <= 3);
  CHECK(tr.residual_norms.back() < 1e-14);
  CHECK(std::abs(tr.last()[0] - 1.0) < 1e-14);
  CHECK(tr.iterates.size() == tr.residual_norms.size());
  CHECK(tr.iterates.size() == tr.step_norms.size());
}

TEST_CASE("Newton at a double root converges linearly") {
  NewtonOptions o;
  o.max_iters = 20;
  o.stop_on_residual = false;
  const auto tr = gauss_newton(sys("vars: x\nx^2;"), Point{1e-3}, o);
  CHECK(tr.iterations() == 20);
  for (std::size_t k = 2; k < tr.step_norms.size(); ++k) {
    CHECK(tr.step_norms[k] / tr.step_norms[k - 1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(tr.step_norms[k] > 1e-14);
  }
}

TEST_CASE("Newton rejects bad input") {
  CHECK_THROWS_AS(gauss_newton(sys("vars: x\nx - 1;"), Point{0.0, 1.0}), DimensionError);
  CHECK_THROWS_AS(gauss_newton(sys("vars: x\nx - 1;"), Point{cplx(std::nan(""), 0.0)}), NumericalError);
}

TEST_CASE("order-2 deflated cubic system converges in a couple of iterations") {
  Rng r(7);
  const auto F = sys(corpus::kCubics);
  const Point x0{cplx(6e-6, 0.0), cplx(-8e-6, 0.0)};
  // ranks at a point this accurate are judged at 1e-4, not 1e-8
  const auto aug = deflate_higher_order(F, 2, x0, 1e-4, r);
  CHECK(aug.rank.corank == 5);
  Point z = x0;
  z.insert(z.end(), aug.multiplier_start.begin(), aug.multiplier_start.end());
  // the least-squares multipliers already make the residual tiny, so only
  // the step test says anything about the iterate
  NewtonOptions o;
  o.stop_on_residual = false;
  const auto tr = gauss_newton(aug.system, z, o);
  CHECK(tr.converged);
  CHECK(tr.iterations() <= 5);
  CHECK(tr.residual_norms.back() < 1e-12);
  CHECK(std::abs(tr.last()[0]) + std::abs(tr.last()[1]) < 1e-12);
}

TEST_CASE("is_regular") {
  CHECK(is_regular(sys("vars: x\nx;"), Point{0.0}).regular);
  const auto c = is_regular(sys(corpus::kCubics), kOrigin);
  CHECK_FALSE(c.regular);
  CHECK(c.rank.rank == 0);
  CHECK(c.rank.corank == 2);
}

TEST_CASE("driver with first-order steps on the cubic system") {
  const auto F = sys(corpus::kCubics);
  const auto res = deflation_driver(F, Point{cplx(6e-6, 0.0), cplx(-8e-6, 0.0)}, config(OrderPolicy::First));
  CHECK(res.final_regular);
  REQUIRE(res.stages.size() == 2);
  REQUIRE(res.per_stage_rank.size() == 3);
  CHECK(res.per_stage_rank[0].rank == 0);
  CHECK(res.per_stage_rank[1].rank == 1);
  CHECK(res.per_stage_rank[2].corank == 0);
  CHECK(res.stages[1].multiplier_count == 2);
  CHECK(res.final_residual < 1e-12);
  CHECK(dist(res.refined_point, kOrigin) < 1e-12);
}

TEST_CASE("driver with predicted order on the cubic system") {
  const auto F = sys(corpus::kCubics);
  const auto res = deflation_driver(F, Point{cplx(6e-6, 0.0), cplx(-8e-6, 0.0)}, config(OrderPolicy::Auto));
  CHECK(res.final_regular);
  REQUIRE(res.stages.size() == 1);
  CHECK(res.stages[0].order == 2);
  REQUIRE(res.stage_info[0].prediction.has_value());
  CHECK(res.stage_info[0].prediction->d == 2);
  CHECK(res.per_stage_rank.back().corank == 0);
  CHECK(res.final_residual < 1e-12);
}

TEST_CASE("driver on a double root") {
  const auto res = deflation_driver(sys("vars: x\nx^2;"), Point{1e-3}, config(OrderPolicy::Auto));
  CHECK(res.final_regular);
  CHECK(res.stages.size() == 1);
  CHECK(std::abs(res.refined_point[0]) < 1e-12);
}

TEST_CASE("driver on a regular root does not deflate") {
  const auto res = deflation_driver(sys("vars: x y\nx + y - 1;\nx - y;"), Point{0.5 + 1e-6, 0.5 - 2e-6}, config(OrderPolicy::Auto));
  CHECK(res.final_regular);
  CHECK(res.stages.empty());
  CHECK(std::abs(res.refined_point[0] - 0.5) < 1e-14);
}

TEST_CASE("driver errors") {
  CHECK_THROWS_AS(deflation_driver(sys("vars: x\nx^2 - 1;"), Point{0.0}, config(OrderPolicy::Auto)), NotARootError);
  // a root of multiplicity 3 handled one first-order stage at a time with a
  // cap of one stage
  auto c = config(OrderPolicy::First);
  c.max_stages = 1;
  try {
    deflation_driver(sys("vars: x y\nx^3;\ny^3;"), Point{1e-4, -1e-4}, c);
    FAIL("expected DeflationFailure");
  } catch (const DeflationFailure& e) {
    CHECK(e.partial().stages.size() == 1);
    CHECK_FALSE(e.partial().final_regular);
  }
}

TEST_CASE("property: the driver is deterministic") {
  const auto F = sys(corpus::kRunning1);
  const Point x0 = perturbed(kOrigin, 1e-3, 1);
  for (const auto p : {OrderPolicy::Auto, OrderPolicy::First}) {
    const auto a = deflation_driver(F, x0, config(p, 42));
    const auto b = deflation_driver(F, x0, config(p, 42));
    CHECK(a.final_system == b.final_system);
    CHECK(a.extended_point == b.extended_point);
    REQUIRE(a.traces.size() == b.traces.size());
    for (std::size_t i = 0; i < a.traces.size(); ++i) CHECK(a.traces[i].iterates == b.traces[i].iterates);
  }
}

TEST_CASE("property: corpus roots are deflated in fewer than mu stages") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const bool exact = !e.newton_converges;
    const Point x0 = exact ? e.root : perturbed(e.root, 1e-3, 3);
    for (const auto p : {OrderPolicy::Auto, OrderPolicy::First}) {
      if (exact && p == OrderPolicy::Auto) continue;
      auto c = config(p);
      c.precompute_multiplicity = true;
      const auto res = deflation_driver(e.system, x0, c);
      CHECK(res.final_regular);
      REQUIRE(res.multiplicity_before.has_value());
      CHECK(*res.multiplicity_before == e.multiplicity);
      CHECK(static_cast<int>(res.stages.size()) < e.multiplicity);
      CHECK(res.per_stage_rank.back().corank == 0);
      CHECK(dist(res.refined_point, e.root) < 1e-10 * (1.0 + dist(e.root, Point(e.root.size(), 0.0))));
      double scale = 0.0;
      for (const auto& f : e.system.polys()) scale = std::max(scale, evaluation_scale(f, res.refined_point));
      CHECK(res.final_residual < 1e-10 * scale);
    }
  }
}

TEST_CASE("property: Newton on the final system converges quadratically") {
  for (const auto& e : corpus::all()) {
    if (!e.newton_converges) continue;
    CAPTURE(e.name);
    const auto res = deflation_driver(e.system, perturbed(e.root, 1e-3, 5), config(OrderPolicy::Auto));
    REQUIRE(res.final_regular);
    const Point& ref = res.extended_point;
    NewtonOptions o;
    o.stop_on_residual = false;
    o.max_iters = 12;
    const auto tr = gauss_newton(res.final_system, perturbed(ref, 1e-4, 6), o);
    std::vector<double> err;
    for (const auto& x : tr.iterates) err.push_back(dist(x, ref));
    CHECK(err.back() < 1e-13 * (1.0 + dist(ref, Point(ref.size(), 0.0))));
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
      if (err[k] < 1e-7) break;
      worst = std::max(worst, err[k + 1] / (err[k] * err[k]));
    }
    CAPTURE(worst);
    CHECK(worst < 1e4);
  }
}
