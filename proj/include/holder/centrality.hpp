#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "holder/curve.hpp"
#include "holder/feature.hpp"

namespace holder {

/// Feature, interval [a, b], boundary values u(a), u(b) and exponent alpha.
struct VariationalProblem {
  VariationalProblem(Feature feature, double a, double b, double ua, double ub, double alpha);

  Feature feature;
  double a;
  double b;
  double ua;
  double ub;
  double alpha;

  double delta() const noexcept { return b - a; }
  VariationalProblem with_alpha(double new_alpha) const;
};

/// Below this |alpha| the geometric-mean limit is used.
inline constexpr double kAlphaSwitch = 1e-8;
/// Above this |alpha| the power mean is accumulated in log space.
inline constexpr double kAlphaLogSpace = 500.0;

struct QuadratureOptions {
  /// Odd number of Simpson nodes. Grid curves with an odd node count use their own nodes.
  std::size_t nodes = 2001;
};

/// ((1/delta) int_a^b F^alpha dx)^(1/alpha), or exp((1/delta) int ln F dx) when |alpha| < kAlphaSwitch.
double evaluate_centrality(const VariationalProblem& problem, const Curve& curve,
                           const QuadratureOptions& opts = {});

std::vector<std::pair<double, double>> centrality_alpha_sweep(const VariationalProblem& problem,
                                                              const Curve& curve,
                                                              std::span<const double> alphas,
                                                              const QuadratureOptions& opts = {});

/// (min F, max F) over the quadrature grid.
std::pair<double, double> extremal_limits(const VariationalProblem& problem, const Curve& curve,
                                          const QuadratureOptions& opts = {});

/// Quadrature nodes used for `curve`: its own nodes when it is an odd-sized grid.
std::vector<double> quadrature_nodes(const Curve& curve, const QuadratureOptions& opts);

/// Throws DomainMismatch when the curve's interval or end values disagree with the problem.
void check_compatible(const VariationalProblem& problem, const Curve& curve);

/// ln F sampled along the curve at the given nodes.
std::vector<double> log_feature_samples(const VariationalProblem& problem, const Curve& curve,
                                        std::span<const double> nodes);

}  // namespace holder
