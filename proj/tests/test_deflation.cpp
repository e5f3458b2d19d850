#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corpus.h"
#include "hod/deflation.h"
#include "hod/dual_space.h"
#include "hod/solver.h"

using namespace hod;

namespace {

const Point kOrigin{0.0, 0.0};

PolySystem sys(const char* text) { return parse_system(text); }

Point joined(const Point& x, const Point& lambda) {
  Point z = x;
  z.insert(z.end(), lambda.begin(), lambda.end());
  return z;
}

Point root_of(const AugmentedSystem& aug, const Point& x) { return joined(x, aug.multiplier_start); }

double scale_of(const PolySystem& F, const Point& z) {
  double s = 1.0;
  for (const auto& f : F.polys()) s = std::max(s, evaluation_scale(f, z));
  return s;
}

bool has_equation(const PolySystem& G, const Polynomial& p) {
  for (const auto& g : G.polys()) {
    if ((g - p).max_abs_coefficient() < 1e-12 * (1.0 + p.max_abs_coefficient())) return true;
  }
  return false;
}

int order_for(const corpus::Entry& e) {
  Rng r(1);
  return predict_order(e.system, e.root, 1e-8, 1e-4, r).d;
}

}  // namespace

TEST_CASE("top block of the order-2 deflation matrix of example 2") {
  const auto F = sys(corpus::kExample2);
  const auto A = deflation_matrix(F, 2);
  REQUIRE(A.rows() == 9);
  REQUIRE(A.cols() == 5);
  const auto top = sys(
      "vars: x1 x2\n"
      "2*x1; 0; 2; 0; 0;\n"
      "2*x1; -3*x2^2; 2; 0; -6*x2;\n"
      "0; 4*x2^3; 0; 0; 12*x2^2;\n");
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 5; ++j) CHECK(A.at(i, j) == top[static_cast<std::size_t>(i * 5 + j)]);
  CHECK_THROWS_AS(deflation_matrix(F, 0), ArgumentError);
}

TEST_CASE("every entry of A^(2) for example 2 matches the Leibniz oracle") {
  const auto F = sys(corpus::kExample2);
  using oracle::term;
  const std::vector<oracle::Poly> f{term(1, {2, 0}), oracle::add(term(1, {2, 0}), term(1, {0, 3}), -1.0),
                                    term(1, {0, 4})};
  const auto A = deflation_matrix(F, 2);
  int checked = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const auto& row = A.row_labels()[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const auto& beta = A.col_labels()[static_cast<std::size_t>(j)];
      const auto want = oracle::to_hod(oracle::leibniz_entry(f[row.equation], row.alpha.entries(), beta.entries()), 2);
      CHECK(A.at(i, j) == want);
      ++checked;
    }
  }
  CHECK(checked == 45);
}

TEST_CASE("property: dimension law and Jacobian embedding") {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t N = 1; N <= 3; ++N) {
      std::vector<Polynomial> ps;
      for (std::size_t j = 0; j < N; ++j) {
        Polynomial p(n);
        for (const auto& e : monomials_up_to(n, 3)) p.add_term(e, cplx(u(g), u(g)));
        ps.push_back(p);
      }
      const PolySystem F(ps);
      Point x(n);
      for (auto& c : x) c = cplx(u(g), u(g));
      const CMatrix J = jacobian(F).evaluate(x);
      for (int d = 1; d <= 4; ++d) {
        CAPTURE(n);
        CAPTURE(N);
        CAPTURE(d);
        const auto A = deflation_matrix(F, d);
        CHECK(A.rows() == static_cast<Eigen::Index>(N * binomial(static_cast<int>(n) + d - 1, static_cast<int>(n))));
        CHECK(A.cols() == static_cast<Eigen::Index>(binomial(static_cast<int>(n) + d, static_cast<int>(n)) - 1));
        const CMatrix Ax = A.evaluate(x);
        const Eigen::Index Ni = static_cast<Eigen::Index>(N), ni = static_cast<Eigen::Index>(n);
        CHECK((Ax.topLeftCorner(Ni, ni) - J).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + J.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("Jacobian entries") {
  const auto F = sys(corpus::kLec02);
  const auto J = jacobian(F);
  CHECK(J.rows() == 3);
  CHECK(J.cols() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(J.at(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) == differentiate(F[j], Exponent::unit(3, k)));
}

TEST_CASE("truncated deflation matrix") {
  const auto F = sys(corpus::kRunning2);
  const auto T = truncated_deflation_matrix(F, 2);
  CHECK(T.rows() == 3);
  CHECK(T.cols() == 3);
  CHECK(T.col_labels() == std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}});

  const auto lec = sys(corpus::kLec02);
  CHECK(truncated_deflation_matrix(lec, 2).rows() == 3);
  const auto M = truncated_deflation_matrix(lec, 2, TruncatedRows::Multiples);
  CHECK(M.rows() == 12);
  CHECK(M.cols() == 6);
  const CMatrix K = kernel_basis(M.evaluate(Point{0.0, 0.0, -1.0}), 1e-8, M.coefficient_scale());
  CHECK(K.cols() == 2);
  CHECK_THROWS_AS(truncated_deflation_matrix(F, 0), ArgumentError);
}

TEST_CASE("fixed operator from the Lec02 kernel") {
  const auto F = sys(corpus::kLec02);
  const std::vector<cplx> v{1, 6, 8, -3, 0, 4};
  const auto Q = DeflationOperator::from_vector(3, 2, v, true);
  CHECK(Q.homogeneous());
  CHECK(Q.order() == 2);
  const auto aug = deflate_with_operator(F, Q, 2);
  CHECK(aug.multiplier_count == 0);
  CHECK(aug.kind == AugmentationKind::FixedOperator);
  const auto want = sys("vars: x1 x2 x3\n8*x1 + 24*x2 + 16*x3 + 16;\n24*x1 - 24*x2;\n32*x1 + 16*x3 + 16;\n");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(apply_operator(Q, monomial_multiply(F[0], Exponent::unit(3, i))) == want[i]);
    CHECK(has_equation(aug.system, want[i]));
  }
  const Point root{0.0, 0.0, -1.0};
  CHECK(is_regular(aug.system, root).regular);
  CHECK(residual_norm(aug.system, root) < 1e-12);
}

TEST_CASE("fixed operator on x^2") {
  const auto F = sys("vars: x\nx^2;");
  const auto Q = DeflationOperator::from_vector(1, 1, std::vector<cplx>{1.0});
  const auto aug = deflate_with_operator(F, Q, 1);
  REQUIRE(aug.system.size() == 2);
  CHECK(aug.system[1] == sys("vars: x\n2*x;")[0]);
  CHECK(is_regular(aug.system, Point{0.0}).regular);
  CHECK_THROWS_AS(DeflationOperator::from_vector(1, 1, std::vector<cplx>{0.0}), ArgumentError);
  CHECK_THROWS_AS(deflate_with_operator(F, DeflationOperator::from_vector(1, 2, std::vector<cplx>{0.0, 1.0}), 1),
                  ArgumentError);
}

TEST_CASE("operator and functional correspondence") {
  const auto Q = DeflationOperator::from_vector(2, 2, std::vector<cplx>{1, 2, 3, 4, 5});
  const auto L = operator_to_functional(Q, kOrigin);
  // lambda_beta d^beta  <->  lambda_beta beta! Delta_beta
  const Polynomial::TermMap& t = L.terms();
  CHECK(t.at({2, 0}) == cplx(6.0));
  CHECK(t.at({1, 1}) == cplx(4.0));
  CHECK(t.at({0, 2}) == cplx(10.0));
  const auto back = functional_to_operator(L);
  CHECK(back.coefficients() == Q.coefficients());
  const auto p = sys("vars: x1 x2\nx1^3 - 2*x1*x2 + x2^2 + 7;")[0];
  const Point pt{cplx(0.5, 1.0), cplx(-1.0, 0.25)};
  CHECK(std::abs(apply_functional(operator_to_functional(Q, pt), p) - evaluate(apply_operator(Q, p), pt)) < 1e-12);
}

TEST_CASE("property: kernel vectors of A^(d) give annihilating functionals") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const std::size_t n = e.system.nvars();
    for (int d = 1; d <= 2; ++d) {
      const auto A = deflation_matrix(e.system, d);
      const CMatrix K = kernel_basis(A.evaluate(e.root), 1e-8, A.coefficient_scale());
      REQUIRE(K.cols() > 0);
      for (Eigen::Index c = 0; c < K.cols(); ++c) {
        const CVector v = K.col(c);
        const auto L = operator_to_functional(
            DeflationOperator::from_vector(n, d, std::span<const cplx>(v.data(), static_cast<std::size_t>(v.size()))),
            e.root);
        for (const auto& row : A.row_labels()) {
          const auto p = monomial_multiply(e.system[row.equation], row.alpha);
          CHECK(std::abs(apply_functional(L, p)) < 1e-7 * (1.0 + evaluation_scale(p, e.root)));
        }
      }
    }
  }
}

TEST_CASE("predict_order") {
  Rng r(7);
  const auto cubics = sys(corpus::kCubics);
  const Point near{cplx(6e-6, 0.0), cplx(-8e-6, 0.0)};
  const auto p = predict_order(cubics, near, 1e-8, 1e-4, r);
  CHECK(p.d == 2);
  CHECK(*p.support_degrees.begin() == 3);

  const auto sq = predict_order(sys("vars: x\nx^2;"), Point{0.0}, 1e-8, 1e-4, r);
  CHECK(sq.d == 1);
  CHECK(sq.support_degrees == std::set<int>{2});

  CHECK(predict_order(sys(corpus::kLec02), Point{0.0, 0.0, -1.0}, 1e-8, 1e-4, r).d == 1);
  CHECK_THROWS_AS(predict_order(sys("vars: x\nx;"), Point{0.0}, 1e-8, 1e-4, r), AlreadyRegularError);
}

TEST_CASE("property: predict_order does not depend on the direction drawn") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    const int d0 = order_for(e);
    for (std::uint64_t s = 2; s <= 20; ++s) {
      Rng r(s);
      CHECK(predict_order(e.system, e.root, 1e-8, 1e-4, r).d == d0);
    }
  }
}

TEST_CASE("corank_drop_order") {
  CHECK(corank_drop_order(sys("vars: x\nx^3;"), Point{0.0}) == 2);
  CHECK(corank_drop_order(sys("vars: x\nx^2;"), Point{0.0}) == 1);
  CHECK(corank_drop_order(sys(corpus::kCubics), kOrigin) == 2);
  CHECK_THROWS_AS(corank_drop_order(sys("vars: x\nx;"), Point{0.0}), AlreadyRegularError);
}

TEST_CASE("first-order deflation of x^2") {
  Rng r(3);
  const auto aug = deflate_first_order(sys("vars: x\nx^2;"), Point{0.0}, 1e-8, r);
  REQUIRE(aug.system.size() == 3);
  CHECK(aug.system.nvars() == 2);
  CHECK(aug.multiplier_count == 1);
  CHECK(aug.system[1] == sys("vars: x l\n2*x*l;")[0]);
  const auto& h = aug.system[2];
  CHECK(h.term_count() == 2);
  CHECK(h.coefficient({0, 0}) == cplx(-1.0));
  const cplx b = h.coefficient({0, 1});
  CHECK(std::abs(std::abs(b) - 1.0) < 1e-15);
  CHECK(std::abs(aug.multiplier_start[0] - 1.0 / b) < 1e-14);
  CHECK(is_regular(aug.system, Point{0.0, 1.0 / b}).regular);
  CHECK_THROWS_AS(deflate_first_order(sys("vars: x\nx;"), Point{0.0}, 1e-8, r), AlreadyRegularError);
}

TEST_CASE("two first-order steps regularise the cubic system") {
  Rng r(5);
  const auto F = sys(corpus::kCubics);
  CHECK(rank_at(jacobian(F), kOrigin, 1e-8).rank == 0);
  const auto g1 = deflate_first_order(F, kOrigin, 1e-8, r);
  CHECK(g1.multiplier_count == 1);
  CHECK(g1.system.size() == 3 + 3 + 1);
  const Point z1 = root_of(g1, kOrigin);
  CHECK(rank_at(jacobian(g1.system), z1, 1e-8).rank == 1);
  const auto g2 = deflate_first_order(g1.system, z1, 1e-8, r);
  CHECK(g2.multiplier_count == 2);
  CHECK(is_regular(g2.system, root_of(g2, z1)).regular);
}

TEST_CASE("one second-order step regularises the cubic system") {
  Rng r(5);
  const auto F = sys(corpus::kCubics);
  const auto aug = deflate_higher_order(F, 2, kOrigin, 1e-8, r);
  const int m = rank_at(deflation_matrix(F, 2), kOrigin, 1e-8).corank;
  CHECK(m == 5);
  CHECK(aug.system.size() == static_cast<std::size_t>(3 + 3 * 3 + m));
  CHECK(aug.system.nvars() == 7);
  CHECK(aug.multiplier_count == 5);
  CHECK(aug.kind == AugmentationKind::HigherOrderIndeterminate);
  CHECK(is_regular(aug.system, root_of(aug, kOrigin)).regular);
  CHECK_THROWS_AS(deflate_higher_order(F, 0, kOrigin, 1e-8, r), ArgumentError);
}

TEST_CASE("order one higher-order deflation uses the Jacobian") {
  Rng r(5);
  const auto F = sys(corpus::kRunning2);
  const auto aug = deflate_higher_order(F, 1, kOrigin, 1e-8, r);
  CHECK(aug.multiplier_count == 2);
  CHECK(aug.system.size() == 3 + 3 + 2);
  for (std::size_t j = 0; j < 3; ++j) {
    Polynomial g(4);
    for (std::size_t k = 0; k < 2; ++k) {
      g += differentiate(F[j], Exponent::unit(2, k)).extended(4) * Polynomial::variable(4, 2 + k);
    }
    CHECK(aug.system[3 + j] == g);
  }
}

TEST_CASE("constructions are reproducible from the seed") {
  const auto F = sys(corpus::kCubics);
  Rng a(99), b(99);
  const auto x = deflate_higher_order(F, 2, kOrigin, 1e-8, a);
  const auto y = deflate_higher_order(F, 2, kOrigin, 1e-8, b);
  CHECK(x.system == y.system);
  CHECK(x.drawn_coefficients == y.drawn_coefficients);
  CHECK(x.multiplier_start == y.multiplier_start);
}

TEST_CASE("property: augmented systems vanish at the root") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.name);
    Rng r(11);
    const auto first = deflate_first_order(e.system, e.root, 1e-8, r);
    const Point z1 = root_of(first, e.root);
    CHECK(residual_norm(first.system, z1) < 1e-10 * scale_of(first.system, z1));
    const auto high = deflate_higher_order(e.system, order_for(e), e.root, 1e-8, r);
    const Point z2 = root_of(high, e.root);
    CHECK(residual_norm(high.system, z2) < 1e-10 * scale_of(high.system, z2));
  }
}

TEST_CASE("property: deflation lowers the multiplicity") {
  for (const auto& e : corpus::all()) {
    if (e.name == "lec02") continue;  // covered by the acceptance run
    CAPTURE(e.name);
    Rng r(11);
    const auto first = deflate_first_order(e.system, e.root, 1e-8, r);
    CHECK(dual_space_dz(first.system, root_of(first, e.root)).multiplicity < e.multiplicity);
    const auto high = deflate_higher_order(e.system, order_for(e), e.root, 1e-8, r);
    CHECK(dual_space_dz(high.system, root_of(high, e.root)).multiplicity < e.multiplicity);
  }
}
