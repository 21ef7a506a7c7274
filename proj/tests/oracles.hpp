#pragma once

// Independent reference computations for the test suites. Nothing here goes
// through the library's quadrature, residual or solver code paths.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "holder/centrality.hpp"

namespace holder::oracle {

/// Midpoint Riemann sum of f over [a, b] with n cells.
inline double riemann(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) sum += f(a + (static_cast<double>(i) + 0.5) * h);
  return static_cast<double>(sum * h);
}

/// Hoelder mean of F along a curve by brute-force Riemann sums.
inline double riemann_centrality(const VariationalProblem& p, const Curve& c, double alpha, std::size_t n) {
  auto F = [&](double x) {
    const CurveSample s = c.at(x);
    return p.feature.value({x, s.u, s.du});
  };
  if (alpha == 0.0) {
    return std::exp(riemann([&](double x) { return std::log(F(x)); }, p.a, p.b, n) / p.delta());
  }
  return std::pow(riemann([&](double x) { return std::pow(F(x), alpha); }, p.a, p.b, n) / p.delta(), 1.0 / alpha);
}

/// ((1/1) int_0^1 e^{alpha x} dx)^{1/alpha} = ((e^alpha - 1)/alpha)^{1/alpha}.
inline double exp_feature_mean(double alpha) {
  if (alpha == 0.0) return std::exp(0.5);
  return std::exp(std::log(std::expm1(alpha) / alpha) / alpha);
}

/// Hand-expanded shortest-path residual factor u''(1 + (alpha - 1) u'^2).
inline double arclength_factor(double alpha, double du, double ddu) { return ddu * (1.0 + (alpha - 1.0) * du * du); }

/// Hand-expanded Brachistochrone Euler-Lagrange expression (library residual is its negative):
/// F(F_u - d/dx F_u') = -1/(2u^2) - u''/(u(1+u'^2)),
/// (alpha-1) F_u' dF/dx = (alpha-1)(u'^2/u)(u''/(1+u'^2) - 1/(2u)).
inline double brachistochrone_residual(double alpha, double u, double du, double ddu) {
  const double q = 1.0 + du * du;
  return (-1.0 / (2 * u * u) - ddu / (u * q)) - (alpha - 1.0) * (du * du / u) * (ddu / q - 1.0 / (2 * u));
}

/// Hand-expanded Snell Euler-Lagrange expression with speed c and c' (library residual is its negative).
inline double snell_residual(double alpha, double c, double dc, double du, double ddu) {
  const double F = std::sqrt(1.0 + du * du) / c;
  const double fp = du / (c * c * F);
  const double dfp = -du * dc / (c * c * c * F) + ddu / (c * c * c * c * F * F * F);
  const double df = du * ddu / (c * c * F) - dc / c * F;
  return F * (0.0 - dfp) - (alpha - 1.0) * fp * df;
}

/// int_a^b h'^2 for h = sum c_k sin(k pi (x - a)/delta).
inline double sine_series_energy(const std::vector<double>& coeffs, double delta) {
  double e = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double w = static_cast<double>(k + 1) * std::numbers::pi / delta;
    e += coeffs[k] * coeffs[k] * w * w * delta / 2.0;
  }
  return e;
}

/// Stationary curves of the alpha = 2 Brachistochrone, u'' = (u'^2 - 1)/(2u):
/// first integral u'^2 = 1 + K u, giving parabolas u = A (x - x0)^2 - 1/(4A) (K = 4A).
struct Parabola {
  double A;
  double x0;
  double u(double x) const { return A * (x - x0) * (x - x0) - 1.0 / (4 * A); }
  double du(double x) const { return 2 * A * (x - x0); }
  double ddu() const { return 2 * A; }
};

/// Downward parabola of the family through (a, ua) and (b, ub) found by bisection on A < 0.
inline Parabola fit_parabola(double a, double ua, double b, double ub) {
  // For fixed A, x0 follows from the difference of the two end conditions; solve the remaining one in A.
  auto x0_for = [&](double A) { return (ub - ua) / (A * (b - a)) / 2.0 * -1.0 + (a + b) / 2.0; };
  auto g = [&](double A) {
    const Parabola p{A, x0_for(A)};
    return p.u(a) - ua;
  };
  double lo = -10.0, hi = -1e-6;
  // scan for a sign change
  const int steps = 20000;
  double prev = g(lo);
  for (int i = 1; i <= steps; ++i) {
    const double A = lo + (hi - lo) * i / steps;
    const double cur = g(A);
    if ((prev < 0) != (cur < 0)) {
      double l = A - (hi - lo) / steps, r = A;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (l + r);
        if ((g(l) < 0) != (g(m) < 0)) r = m; else l = m;
      }
      const double Af = 0.5 * (l + r);
      return {Af, x0_for(Af)};
    }
    prev = cur;
  }
  return {0.0, 0.0};
}

inline double coefficient_of_variation(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  return std::sqrt(var) / std::abs(mean);
}

}  // namespace holder::oracle
