#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holder/centrality.hpp"
#include "holder/errors.hpp"
#include "holder/problems.hpp"
#include "holder/quadrature.hpp"
#include "oracles.hpp"

using namespace holder;

namespace {

const double e = std::numbers::e;

VariationalProblem exp_problem(double alpha) {
  return VariationalProblem(custom_entry("exp_x").feature(), 0.0, 1.0, 0.0, 0.0, alpha);
}
Curve flat() { return Curve::line(0.0, 1.0, 0.0, 0.0); }

VariationalProblem parabola_problem(double alpha) {
  return VariationalProblem(arclength_entry().feature(), 0.0, 1.0, 0.0, 1.0, alpha);
}
Curve parabola() {
  return Curve::closed_form(
      0.0, 1.0, [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; });
}

}  // namespace

TEST_CASE("simpson integrates cubics exactly and rejects even node counts") {
  std::vector<double> y;
  for (double x : uniform_nodes(-1.0, 2.0, 7)) y.push_back(x * x * x - 2 * x + 1);
  CHECK(simpson(y, -1.0, 2.0) == doctest::Approx(3.75).epsilon(1e-14));
  CHECK_THROWS_AS(simpson_weights(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(simpson_weights(1, 1.0), std::invalid_argument);
}

TEST_CASE("feature evaluation rejects non-positive values") {
  const Feature bad("neg", [](const JetPoint& p) { return p.x - 0.5; }, {});
  CHECK(bad.value({0.75, 0, 0}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(bad.value({0.25, 0, 0}), NonPositiveFeature);
  try {
    bad.value({0.25, 0, 0});
  } catch (const NonPositiveFeature& err) {
    CHECK(err.x() == 0.25);
  }
  CHECK_THROWS_AS(brachistochrone_entry().feature().value({0.0, -1.0, 0.0}), NonPositiveFeature);
}

TEST_CASE("grid curves differentiate quadratics exactly, endpoints included") {
  std::vector<double> u;
  for (double x : uniform_nodes(-1.0, 3.0, 21)) u.push_back(3 * x * x - 2 * x + 1);
  const Curve c = Curve::from_grid(-1.0, 3.0, u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = c.node(i);
    CHECK(c.slopes()[i] == doctest::Approx(6 * x - 2).epsilon(1e-11));
    CHECK(c.curvatures()[i] == doctest::Approx(6.0).epsilon(1e-9));
  }
  // between nodes the Hermite value of a quadratic with exact slopes is exact
  CHECK(c.value(0.123) == doctest::Approx(3 * 0.123 * 0.123 - 2 * 0.123 + 1).epsilon(1e-12));
  CHECK_THROWS_AS(c.at(3.5), DomainMismatch);
  CHECK_THROWS_AS(c.at(-1.01), DomainMismatch);
  CHECK_THROWS_AS(Curve::from_grid(0.0, 1.0, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Curve::line(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("evaluate_centrality: constant, geometric and quadratic examples") {
  SUBCASE("constant feature returns the constant for every alpha") {
    const auto entry = arclength_entry();
    for (double alpha : {-700.0, -3.0, 0.0, 1e-9, 1.0, 2.5, 700.0}) {
      const VariationalProblem p(entry.feature(), 0.0, 1.0, 0.0, 1.0, alpha);
      CHECK(evaluate_centrality(p, Curve::line(0, 1, 1, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    }
  }
  SUBCASE("F = e^x, alpha = 0 gives e^{1/2}") {
    CHECK(evaluate_centrality(exp_problem(0.0), flat()) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  }
  SUBCASE("arclength along x^2, alpha = 2 gives sqrt(7/3)") {
    CHECK(evaluate_centrality(parabola_problem(2.0), parabola()) == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-10));
  }
}

TEST_CASE("evaluate_centrality errors") {
  CHECK_THROWS_AS(evaluate_centrality(parabola_problem(1.0), Curve::line(0, 1, 2, 0)), DomainMismatch);
  CHECK_THROWS_AS(evaluate_centrality(parabola_problem(1.0), Curve::line(0, 2, 0.5, 0)), DomainMismatch);
  const VariationalProblem snell(snell_linear_entry().feature(), -1.0, 1.0, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(evaluate_centrality(snell, Curve::line(-1, 1, 0, 0)), NonPositiveFeature);
  QuadratureOptions even{1000};
  CHECK_THROWS_AS(evaluate_centrality(exp_problem(1.0), flat(), even), std::invalid_argument);
}

TEST_CASE("alpha sweep on e^x against the closed form") {
  const std::vector<double> alphas{-50.0, 0.0, 1.0, 50.0};
  const auto sweep = centrality_alpha_sweep(exp_problem(1.0), flat(), alphas);
  REQUIRE(sweep.size() == 4);
  for (const auto& [alpha, value] : sweep)
    CHECK(value == doctest::Approx(oracle::exp_feature_mean(alpha)).epsilon(1e-9));
  CHECK(sweep[1].second == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(sweep[2].second == doctest::Approx(e - 1.0).epsilon(1e-12));
  CHECK(sweep[0].second > 1.0);
  CHECK(sweep[0].second < 1.1);
  CHECK(sweep[3].second < e);
  CHECK(sweep[3].second > 0.9 * e);
  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(centrality_alpha_sweep(exp_problem(1.0), flat(), unsorted), std::invalid_argument);
  const std::vector<double> bad{0.0, INFINITY};
  CHECK_THROWS_AS(centrality_alpha_sweep(exp_problem(1.0), flat(), bad), std::invalid_argument);
}

TEST_CASE("alpha sweep on a constant feature is flat") {
  const VariationalProblem p(arclength_entry().feature(), 0.0, 1.0, 0.0, 0.3, 1.0);
  const std::vector<double> alphas{-5.0, -1.0, 0.0, 1.0, 5.0};
  const auto sweep = centrality_alpha_sweep(p, Curve::line(0, 1, 0.3, 0), alphas);
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(std::abs(sweep[i].second - sweep[i - 1].second) < 1e-12);
}

TEST_CASE("alpha sweep on x^2 is strictly increasing and matches a 1e6-cell Riemann sum") {
  const std::vector<double> alphas{-1.0, 0.0, 1.0, 2.0};
  const auto p = parabola_problem(1.0);
  const auto sweep = centrality_alpha_sweep(p, parabola(), alphas);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    CHECK(sweep[i].second == doctest::Approx(oracle::riemann_centrality(p, parabola(), alphas[i], 1'000'000)).epsilon(1e-9));
    if (i > 0) CHECK(sweep[i].second > sweep[i - 1].second);
  }
}

TEST_CASE("extremal limits") {
  const auto [lo, hi] = extremal_limits(exp_problem(1.0), flat());
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hi == doctest::Approx(e).epsilon(1e-15));
  const auto [clo, chi] = extremal_limits(parabola_problem(1.0).with_alpha(0.0), Curve::line(0, 1, 1, 0));
  CHECK(clo == chi);
  const auto [plo, phi] = extremal_limits(parabola_problem(1.0), parabola());
  CHECK(plo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  for (double alpha : {-1000.0, 1000.0}) {
    const double c = evaluate_centrality(parabola_problem(alpha), parabola());
    CHECK(std::abs(c - (alpha < 0 ? plo : phi)) < 0.01 * (alpha < 0 ? plo : phi));
  }
}

TEST_CASE("P1: small alpha approaches the geometric mean") {
  for (const auto& [p, c] : {std::pair{exp_problem(0.0), flat()}, std::pair{parabola_problem(0.0), parabola()}}) {
    const double geometric = evaluate_centrality(p, c);
    const double near_zero = evaluate_centrality(p.with_alpha(1e-6), c);
    CHECK(std::abs(near_zero - geometric) / geometric < 1e-5);
    CHECK(evaluate_centrality(p.with_alpha(5e-9), c) == geometric);
  }
}

TEST_CASE("P2: strictly increasing in alpha for random pairs in [-20, 20]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(-20.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a1 = alpha(rng), a2 = alpha(rng);
    if (a1 > a2) std::swap(a1, a2);
    if (a2 - a1 < 1e-6) continue;
    CHECK(evaluate_centrality(exp_problem(a1), flat()) < evaluate_centrality(exp_problem(a2), flat()));
    CHECK(evaluate_centrality(parabola_problem(a1), parabola()) < evaluate_centrality(parabola_problem(a2), parabola()));
  }
}

TEST_CASE("P3/P4: bounded by inf F and sup F for alpha in [-1000, 1000]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(-1000.0, 1000.0);
  const auto [lo, hi] = extremal_limits(parabola_problem(1.0), parabola());
  for (int trial = 0; trial < 300; ++trial) {
    const double a = alpha(rng);
    const double c = evaluate_centrality(parabola_problem(a), parabola());
    CHECK(c >= lo * (1 - 1e-14));
    CHECK(c <= hi * (1 + 1e-14));
  }
}

TEST_CASE("log-space branch joins the direct branch continuously") {
  const double below = evaluate_centrality(exp_problem(kAlphaLogSpace), flat());
  const double above = evaluate_centrality(exp_problem(std::nextafter(kAlphaLogSpace, 1e9)), flat());
  CHECK(above == doctest::Approx(below).epsilon(1e-12));
  CHECK(evaluate_centrality(exp_problem(-600.0), flat()) == doctest::Approx(oracle::exp_feature_mean(-600.0)).epsilon(1e-6));
}

TEST_CASE("doubling quadrature nodes changes values by less than 1e-8") {
  for (double alpha : {-20.0, -1.0, 0.0, 0.5, 1.0, 2.0, 20.0}) {
    const double coarse = evaluate_centrality(parabola_problem(alpha), parabola(), {2001});
    const double fine = evaluate_centrality(parabola_problem(alpha), parabola(), {4001});
    CHECK(std::abs(fine - coarse) / fine < 1e-8);
  }
}
