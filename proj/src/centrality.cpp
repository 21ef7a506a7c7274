#include "holder/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "holder/errors.hpp"
#include "holder/quadrature.hpp"

namespace holder {

VariationalProblem::VariationalProblem(Feature feature_, double a_, double b_, double ua_, double ub_,
                                       double alpha_)
    : feature(std::move(feature_)), a(a_), b(b_), ua(ua_), ub(ub_), alpha(alpha_) {
  if (!(b > a)) throw std::invalid_argument("variational problem needs b > a");
  if (!std::isfinite(ua) || !std::isfinite(ub) || !std::isfinite(alpha))
    throw std::invalid_argument("boundary values and alpha must be finite");
}

VariationalProblem VariationalProblem::with_alpha(double new_alpha) const {
  VariationalProblem p = *this;
  p.alpha = new_alpha;
  return p;
}

void check_compatible(const VariationalProblem& problem, const Curve& curve) {
  constexpr double tol = 1e-9;
  const double span = std::max(1.0, std::abs(problem.delta()));
  if (std::abs(curve.a() - problem.a) > tol * span || std::abs(curve.b() - problem.b) > tol * span)
    throw DomainMismatch("curve domain differs from problem interval");
  const double ua = curve.value(curve.a());
  const double ub = curve.value(curve.b());
  if (std::abs(ua - problem.ua) > tol * std::max(1.0, std::abs(problem.ua)) ||
      std::abs(ub - problem.ub) > tol * std::max(1.0, std::abs(problem.ub)))
    throw DomainMismatch("curve end values differ from problem boundary values");
}

std::vector<double> quadrature_nodes(const Curve& curve, const QuadratureOptions& opts) {
  if (curve.is_grid() && curve.size() % 2 == 1) return uniform_nodes(curve.a(), curve.b(), curve.size());
  if (opts.nodes < 3 || opts.nodes % 2 == 0) throw std::invalid_argument("quadrature node count must be odd and >= 3");
  return uniform_nodes(curve.a(), curve.b(), opts.nodes);
}

namespace {

std::vector<double> feature_samples(const VariationalProblem& problem, const Curve& curve,
                                    std::span<const double> nodes) {
  std::vector<double> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const CurveSample s = curve.at(nodes[i]);
    out[i] = problem.feature.value({nodes[i], s.u, s.du});
  }
  return out;
}

}  // namespace

std::vector<double> log_feature_samples(const VariationalProblem& problem, const Curve& curve,
                                        std::span<const double> nodes) {
  auto out = feature_samples(problem, curve, nodes);
  for (double& v : out) v = std::log(v);
  return out;
}

namespace {

double power_mean(std::span<const double> log_f, std::span<const double> weights, double alpha) {
  // weights sum to one
  if (std::abs(alpha) < kAlphaSwitch) {
    double mean_log = 0.0;
    for (std::size_t i = 0; i < log_f.size(); ++i) mean_log += weights[i] * log_f[i];
    return std::exp(mean_log);
  }
  if (std::abs(alpha) <= kAlphaLogSpace) {
    // ln((1/delta) int F^alpha) = log1p(mean(expm1(alpha ln F))) keeps small alpha accurate.
    double mean_m1 = 0.0;
    for (std::size_t i = 0; i < log_f.size(); ++i) mean_m1 += weights[i] * std::expm1(alpha * log_f[i]);
    return std::exp(std::log1p(mean_m1) / alpha);
  }
  double peak = -INFINITY;
  for (double l : log_f) peak = std::max(peak, alpha * l);
  double scaled = 0.0;
  for (std::size_t i = 0; i < log_f.size(); ++i) scaled += weights[i] * std::exp(alpha * log_f[i] - peak);
  return std::exp((peak + std::log(scaled)) / alpha);
}

std::vector<double> mean_weights(std::size_t n, double delta) {
  auto w = simpson_weights(n, delta);
  for (double& wi : w) wi /= delta;
  return w;
}

}  // namespace

double evaluate_centrality(const VariationalProblem& problem, const Curve& curve, const QuadratureOptions& opts) {
  check_compatible(problem, curve);
  const auto nodes = quadrature_nodes(curve, opts);
  const auto log_f = log_feature_samples(problem, curve, nodes);
  const auto w = mean_weights(nodes.size(), problem.delta());
  return power_mean(log_f, w, problem.alpha);
}

std::vector<std::pair<double, double>> centrality_alpha_sweep(const VariationalProblem& problem,
                                                              const Curve& curve,
                                                              std::span<const double> alphas,
                                                              const QuadratureOptions& opts) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!std::isfinite(alphas[i])) throw std::invalid_argument("alpha values must be finite");
    if (i > 0 && alphas[i] < alphas[i - 1]) throw std::invalid_argument("alpha values must be sorted ascending");
  }
  check_compatible(problem, curve);
  const auto nodes = quadrature_nodes(curve, opts);
  const auto log_f = log_feature_samples(problem, curve, nodes);
  const auto w = mean_weights(nodes.size(), problem.delta());
  std::vector<std::pair<double, double>> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) out.emplace_back(alpha, power_mean(log_f, w, alpha));
  return out;
}

std::pair<double, double> extremal_limits(const VariationalProblem& problem, const Curve& curve,
                                          const QuadratureOptions& opts) {
  check_compatible(problem, curve);
  const auto nodes = quadrature_nodes(curve, opts);
  const auto f = feature_samples(problem, curve, nodes);
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return {*lo, *hi};
}

}  // namespace holder
