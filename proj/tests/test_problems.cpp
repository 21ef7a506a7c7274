#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holder/errors.hpp"
#include "holder/problems.hpp"
#include "holder/variational.hpp"

using namespace holder;
using std::numbers::pi;

namespace {

void check_partials_close(const Partials& exact, const Partials& fd) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-5 * std::max(1.0, std::abs(x)); };
  CHECK(close(exact.f, fd.f));
  CHECK(close(exact.fx, fd.fx));
  CHECK(close(exact.fu, fd.fu));
  CHECK(close(exact.fp, fd.fp));
  CHECK(close(exact.fuu, fd.fuu));
  CHECK(close(exact.fup, fd.fup));
  CHECK(close(exact.fpp, fd.fpp));
  CHECK(close(exact.fxp, fd.fxp));
}

}  // namespace

TEST_CASE("catalog names round-trip") {
  for (auto n : {CatalogName::Arclength, CatalogName::Brachistochrone, CatalogName::SnellLinear, CatalogName::SnellLogistic,
                 CatalogName::Custom})
    CHECK(catalog_name_from_string(to_string(n)) == n);
  CHECK_FALSE(catalog_name_from_string("catenary").has_value());
  CHECK_THROWS_AS(custom_entry("nope"), std::out_of_range);
  CHECK_THROWS_AS(arclength_entry().closed_form("cycloid"), std::out_of_range);
}

TEST_CASE("analytic partials agree with finite differences at 100 random points") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> x(0.5, 8.0), u(0.3, 3.0), p(-2.0, 2.0);
  for (const auto& entry : {arclength_entry(), brachistochrone_entry(), snell_linear_entry(), snell_logistic_entry(),
                            snell_logistic_entry({0.2, 5.0}), custom_entry("exp_x")}) {
    CAPTURE(entry.feature().name());
    REQUIRE(entry.feature().analytic_partials());
    for (int i = 0; i < 100; ++i) {
      const JetPoint j{x(rng), u(rng), p(rng)};
      check_partials_close(entry.feature().partials(j), entry.feature().finite_difference_partials(j));
    }
  }
}

TEST_CASE("independence flags") {
  CHECK_FALSE(arclength_entry().feature().depends_on_x());
  CHECK_FALSE(arclength_entry().feature().depends_on_u());
  CHECK_FALSE(brachistochrone_entry().feature().depends_on_x());
  CHECK(brachistochrone_entry().feature().depends_on_u());
  CHECK(brachistochrone_entry().feature().flags().singular_at_zero_u);
  CHECK(snell_linear_entry().feature().depends_on_x());
  CHECK_FALSE(snell_linear_entry().feature().depends_on_u());
}

TEST_CASE("closed-form families are stationary for their admitted alpha") {
  struct Case {
    CatalogEntry entry;
    std::string id;
    double a, b, alpha;
    CurveParams params;
    double tol;
  };
  const std::vector<Case> cases{
      {arclength_entry(), "line", 0.0, 1.0, -2.0, {{"s", 0.3}}, 1e-14},
      {arclength_entry(), "slope_constrained", 0.0, 1.0, 0.5, {}, 1e-14},
      {arclength_entry(), "slope_constrained", 0.0, 1.0, -5.0, {{"sign", 1.0}}, 1e-14},
      {brachistochrone_entry(), "cycloid", 0.5, 3.0, 1.0, {{"r", 1.0}}, 1e-6},
      {brachistochrone_entry(), "stationary_line", 0.5, 5.0, 3.0, {}, 1e-12},
      {snell_linear_entry(), "circle", 0.2, 1.8, 1.0, {{"k", 0.5}, {"p", 1.0}}, 1e-8},
      {snell_linear_entry(), "cubic", 0.5, 2.0, 2.0, {{"k", 1.0}}, 1e-8},
      {snell_linear_entry(), "line", 0.5, 2.0, 0.0, {{"s", 0.4}}, 1e-8},
      {snell_logistic_entry(), "logistic", 0.0, 10.0, 2.0, {}, 1e-8},
      {snell_logistic_entry({0.2, 5.0}), "logistic", 0.0, 10.0, 2.0, {}, 1e-8},
  };
  for (const auto& c : cases) {
    CAPTURE(c.id);
    const auto& form = c.entry.closed_form(c.id);
    CHECK(form.admits(c.alpha));
    const Curve curve = form.build(c.a, c.b, c.alpha, c.params);
    const VariationalProblem p(c.entry.feature(), c.a, c.b, curve.value(c.a), curve.value(c.b), c.alpha);
    CHECK(max_stationarity_residual(p, curve) < c.tol);
  }
  CHECK_FALSE(brachistochrone_entry().closed_form("cycloid").admits(2.0));
  CHECK_FALSE(snell_linear_entry().closed_form("cubic").admits(1.0));
}

TEST_CASE("cycloid points") {
  const auto top = cycloid(1.0, pi);
  CHECK(top.x == doctest::Approx(pi));
  CHECK(top.u == doctest::Approx(2.0));
  const auto quarter = cycloid(1.0, pi / 2);
  CHECK(quarter.x == doctest::Approx(pi / 2 - 1.0));
  CHECK(quarter.u == doctest::Approx(1.0));
  CHECK_THROWS_AS(cycloid(0.0, 1.0), DegenerateRadius);
  CHECK_THROWS_AS(cycloid(-1.0, 1.0), DegenerateRadius);
}

TEST_CASE("cycloid arc inversion and graph derivatives") {
  const CycloidArc arc{1.5, 0.2, 5.0, -0.3};
  for (double theta : {0.3, 1.0, 2.5, 4.9}) {
    const double x = arc.x_at(theta);
    CHECK(arc.theta_at(x) == doctest::Approx(theta).epsilon(1e-12));
    const auto g = arc.graph_at(x);
    CHECK(g.u == doctest::Approx(arc.u_at(theta)).epsilon(1e-12));
    CHECK(g.du == doctest::Approx(std::sin(theta) / (1 - std::cos(theta))).epsilon(1e-10));
    const double k = 1 - std::cos(theta);
    CHECK(g.ddu == doctest::Approx(-1.0 / (arc.r * k * k)).epsilon(1e-10));
  }
}

TEST_CASE("fit_cycloid reproduces end conditions") {
  for (auto [a, ua, b, ub] : {std::array{0.0, 1.0, 5.0, 1.0}, std::array{0.0, 0.5, 3.0, 2.0}, std::array{1.0, 2.0, 2.0, 0.3}}) {
    const CycloidArc arc = fit_cycloid(a, ua, b, ub);
    CHECK(arc.r > 0.0);
    CHECK(arc.x_at(arc.theta_a) == doctest::Approx(a).epsilon(1e-10));
    CHECK(arc.u_at(arc.theta_a) == doctest::Approx(ua).epsilon(1e-10));
    CHECK(arc.x_at(arc.theta_b) == doctest::Approx(b).epsilon(1e-10));
    CHECK(arc.u_at(arc.theta_b) == doctest::Approx(ub).epsilon(1e-10));
  }
}

TEST_CASE("cycloid_curve carries exact nodal derivatives") {
  const Curve c = cycloid_curve(1.0, 0.3, pi, 101);
  CHECK(c.size() == 101);
  CHECK(c.a() == doctest::Approx(cycloid(1.0, 0.3).x));
  CHECK(c.b() == doctest::Approx(pi));
  CHECK(c.values().back() == doctest::Approx(2.0));
  CHECK(std::abs(c.slopes().back()) < 1e-12);
  CHECK(c.curvatures().back() == doctest::Approx(-0.25));
}

TEST_CASE("snell_reduced_slope examples") {
  CHECK(snell_reduced_slope(snell_linear_entry(), 2.0, 1.0, 2.0) == doctest::Approx(4.0));
  CHECK(snell_reduced_slope(snell_linear_entry(), 1.0, 0.5, 1.0) == doctest::Approx(0.5 / std::sqrt(0.75)).epsilon(1e-14));
  CHECK(snell_reduced_slope(snell_linear_entry(), 1.0, -0.5, 1.0) == doctest::Approx(-0.5 / std::sqrt(0.75)).epsilon(1e-14));
  CHECK(snell_reduced_slope(snell_logistic_entry(), 2.0, 1.0, 5.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(snell_reduced_slope(snell_linear_entry(), 1.0, 0.5, 2.5), SquareRootDomain);
  CHECK_THROWS_AS(snell_reduced_slope(arclength_entry(), 1.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("shortest-path table structure") {
  const auto t = table1_matrix();
  CHECK(t.size() == 14);
  int real = 0, cases = 0;
  for (const auto& e : t) {
    if (e.row.space == Space::Real) ++real;
    if (e.test_case) {
      ++cases;
      CHECK(e.row.space == Space::Real);
      CHECK(e.test_case->expected == e.row.expected_verdict);
    } else {
      CHECK(e.row.space == Space::Complex);
    }
  }
  CHECK(real == 11);
  CHECK(cases == 11);
}

TEST_CASE("shortest-path table cases are stationary and the feature value matches the table") {
  for (const auto& e : table1_matrix()) {
    if (!e.test_case) continue;
    const auto& tc = *e.test_case;
    const auto p = table1_problem(tc);
    const auto c = table1_curve(tc);
    CHECK(max_stationarity_residual(p, c) < 1e-12);
    const double f = p.feature.value({0.5, c.value(0.5), tc.slope});
    if (tc.branch == OdeBranch::SlopeConstrained)
      CHECK(f == doctest::Approx(std::sqrt(1.0 + 1.0 / (1.0 - tc.alpha))).epsilon(1e-14));
    else
      CHECK(f == doctest::Approx(std::sqrt(1.0 + tc.slope * tc.slope)).epsilon(1e-14));
  }
}

TEST_CASE("shortest-path table line rows classify as the table says") {
  for (const auto& e : table1_matrix()) {
    if (!e.test_case || e.test_case->branch != OdeBranch::LineFree) continue;
    const auto& tc = *e.test_case;
    CAPTURE(tc.alpha);
    CAPTURE(tc.slope);
    CHECK(classify(table1_problem(tc), table1_curve(tc)).verdict == tc.expected);
  }
}
