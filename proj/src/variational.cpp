#include "holder/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "holder/errors.hpp"
#include "holder/quadrature.hpp"

namespace holder {

Variation::Variation(double a, double b, std::vector<double> coefficients)
    : a_(a), b_(b), coeffs_(std::move(coefficients)) {
  if (!(b > a)) throw std::invalid_argument("variation needs a < b");
  if (std::none_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; }))
    throw std::invalid_argument("variation must have a non-zero coefficient");
}

double Variation::value(double x) const {
  const double t = std::numbers::pi * (x - a_) / (b_ - a_);
  double h = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) h += coeffs_[k] * std::sin(static_cast<double>(k + 1) * t);
  return h;
}

double Variation::slope(double x) const {
  const double w = std::numbers::pi / (b_ - a_);
  const double t = w * (x - a_);
  double dh = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    dh += coeffs_[k] * kk * w * std::cos(kk * t);
  }
  return dh;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Minimum: return "Minimum";
    case Verdict::Maximum: return "Maximum";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(ConservedKind kind) {
  switch (kind) {
    case ConservedKind::Beltrami1: return "beltrami1";
    case ConservedKind::Beltrami2: return "beltrami2";
    case ConservedKind::IgnorableU1: return "ignorable_u1";
    case ConservedKind::IgnorableU2: return "ignorable_u2";
    case ConservedKind::LogBeltrami0: return "log_beltrami0";
    case ConservedKind::LogIgnorable0: return "log_ignorable0";
  }
  return "?";
}

namespace {

bool is_alpha_zero(double alpha) { return std::abs(alpha) < kAlphaSwitch; }

struct TotalDerivatives {
  double dfp;  // d/dx F_u'
  double df;   // d/dx F
};

TotalDerivatives total_derivatives(const Partials& d, double du, double ddu) {
  return {d.fxp + d.fup * du + d.fpp * ddu, d.fx + d.fu * du + d.fp * ddu};
}

JetPoint jet(const Curve& curve, double x, double* ddu) {
  const CurveSample s = curve.at(x);
  *ddu = s.ddu;
  return {x, s.u, s.du};
}

}  // namespace

double el_residual(const Feature& feature, double alpha, const JetPoint& p, double ddu) {
  if (is_alpha_zero(alpha)) throw AlphaZero();
  const Partials d = feature.partials(p);
  const auto t = total_derivatives(d, p.du, ddu);
  return d.f * (t.dfp - d.fu) + (alpha - 1.0) * d.fp * t.df;
}

double el_residual(const VariationalProblem& problem, const Curve& curve, double x) {
  double ddu = 0.0;
  const JetPoint p = jet(curve, x, &ddu);
  return el_residual(problem.feature, problem.alpha, p, ddu);
}

double el_residual_alpha0(const Feature& feature, const JetPoint& p, double ddu) {
  const Partials d = feature.partials(p);
  const auto t = total_derivatives(d, p.du, ddu);
  // d/dx (F_u'/F) = (d/dx F_u')/F - F_u' (d/dx F)/F^2
  return t.dfp / d.f - d.fp * t.df / (d.f * d.f) - d.fu / d.f;
}

double el_residual_alpha0(const VariationalProblem& problem, const Curve& curve, double x) {
  double ddu = 0.0;
  const JetPoint p = jet(curve, x, &ddu);
  return el_residual_alpha0(problem.feature, p, ddu);
}

double stationarity_residual(const Feature& feature, double alpha, const JetPoint& p, double ddu) {
  return is_alpha_zero(alpha) ? el_residual_alpha0(feature, p, ddu) : el_residual(feature, alpha, p, ddu);
}

double max_stationarity_residual(const VariationalProblem& problem, const Curve& curve,
                                 const QuadratureOptions& opts) {
  const auto nodes = quadrature_nodes(curve, opts);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    double ddu = 0.0;
    const JetPoint p = jet(curve, nodes[i], &ddu);
    worst = std::max(worst, std::abs(stationarity_residual(problem.feature, problem.alpha, p, ddu)));
  }
  return worst;
}

double conserved_quantity(const VariationalProblem& problem, const Curve& curve, double x, ConservedKind kind) {
  const Feature& f = problem.feature;
  double expected_alpha = 1.0;
  bool needs_x_free = false;
  switch (kind) {
    case ConservedKind::Beltrami1: needs_x_free = true; break;
    case ConservedKind::Beltrami2: needs_x_free = true; expected_alpha = 2.0; break;
    case ConservedKind::IgnorableU1: break;
    case ConservedKind::IgnorableU2: expected_alpha = 2.0; break;
    case ConservedKind::LogBeltrami0: needs_x_free = true; expected_alpha = 0.0; break;
    case ConservedKind::LogIgnorable0: expected_alpha = 0.0; break;
  }
  if (needs_x_free && f.depends_on_x())
    throw FlagMismatch(std::string(to_string(kind)) + " needs a feature independent of x");
  if (!needs_x_free && f.depends_on_u())
    throw FlagMismatch(std::string(to_string(kind)) + " needs a feature independent of u");
  if (std::abs(problem.alpha - expected_alpha) > kAlphaSwitch)
    throw FlagMismatch(std::string(to_string(kind)) + " holds only for alpha = " + std::to_string(expected_alpha));

  const CurveSample s = curve.at(x);
  const Partials d = f.partials({x, s.u, s.du});
  switch (kind) {
    case ConservedKind::Beltrami1: return s.du * d.fp - d.f;
    // Beltrami first integral of F^2: F (u' F_u' - F/2).
    case ConservedKind::Beltrami2: return d.f * (s.du * d.fp - 0.5 * d.f);
    case ConservedKind::IgnorableU1: return d.fp;
    case ConservedKind::IgnorableU2: return d.f * d.fp;
    case ConservedKind::LogBeltrami0: return std::log(d.f) - s.du * d.fp / d.f;
    case ConservedKind::LogIgnorable0: return d.fp / d.f;
  }
  return 0.0;
}

namespace {

/// Per-node data along the curve that does not depend on the variation.
struct SecondVariationKernel {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<Partials> partials;
  std::vector<double> f_pow1;  // F^(alpha-1) or 1/F
  std::vector<double> f_pow2;  // (alpha-1) F^(alpha-2) or -1/F^2
  double delta = 1.0;
};

SecondVariationKernel make_kernel(const VariationalProblem& problem, const Curve& curve,
                                  const SecondVariationOptions& opts) {
  check_compatible(problem, curve);
  const double worst = max_stationarity_residual(problem, curve, opts.quadrature);
  if (!(worst < opts.stationarity_tol)) throw NotStationary(worst);

  SecondVariationKernel k;
  k.nodes = quadrature_nodes(curve, opts.quadrature);
  k.weights = simpson_weights(k.nodes.size(), problem.delta());
  k.delta = problem.delta();
  const std::size_t n = k.nodes.size();
  k.partials.resize(n);
  k.f_pow1.resize(n);
  k.f_pow2.resize(n);
  const double alpha = problem.alpha;
  const bool zero = is_alpha_zero(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveSample s = curve.at(k.nodes[i]);
    const Partials d = problem.feature.partials({k.nodes[i], s.u, s.du});
    k.partials[i] = d;
    if (zero) {
      k.f_pow1[i] = 1.0 / d.f;
      k.f_pow2[i] = opts.alpha0 == Alpha0SecondVariation::Full ? -1.0 / (d.f * d.f) : 0.0;
    } else {
      k.f_pow1[i] = std::pow(d.f, alpha - 1.0);
      k.f_pow2[i] = (alpha - 1.0) * std::pow(d.f, alpha - 2.0);
    }
  }
  return k;
}

SecondVariation evaluate_kernel(const SecondVariationKernel& k, const Variation& v) {
  SecondVariation out;
  for (std::size_t i = 0; i < k.nodes.size(); ++i) {
    const Partials& d = k.partials[i];
    const double h = v.value(k.nodes[i]);
    const double dh = v.slope(k.nodes[i]);
    const double first = d.fu * h + d.fp * dh;
    const double uu = d.fuu * h * h;
    const double up = 2.0 * d.fup * h * dh;
    const double pp = d.fpp * dh * dh;
    const double t1 = k.f_pow2[i] * first * first;
    const double t2 = k.f_pow1[i] * (uu + up + pp);
    out.value += k.weights[i] * (t1 + t2);
    out.magnitude += k.weights[i] * (std::abs(t1) + std::abs(k.f_pow1[i]) * (std::abs(uu) + std::abs(up) + std::abs(pp)));
  }
  out.value /= k.delta;
  out.magnitude /= k.delta;
  return out;
}

}  // namespace

SecondVariation second_variation_terms(const VariationalProblem& problem, const Curve& curve,
                                       const Variation& variation, const SecondVariationOptions& opts) {
  return evaluate_kernel(make_kernel(problem, curve, opts), variation);
}

double second_variation(const VariationalProblem& problem, const Curve& curve, const Variation& variation,
                        const SecondVariationOptions& opts) {
  return second_variation_terms(problem, curve, variation, opts).value;
}

std::vector<Variation> sample_variations(double a, double b, int count, int modes, std::uint64_t seed) {
  if (count < 1 || modes < 1) throw std::invalid_argument("need at least one variation and one mode");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Variation> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < static_cast<std::size_t>(count)) {
    std::vector<double> c(static_cast<std::size_t>(modes));
    for (double& ck : c) ck = coef(rng);
    if (std::any_of(c.begin(), c.end(), [](double ck) { return ck != 0.0; })) out.emplace_back(a, b, std::move(c));
  }
  return out;
}

Classification classify(const VariationalProblem& problem, const Curve& curve, const ClassifyOptions& opts) {
  const auto kernel = make_kernel(problem, curve, opts.second_variation);
  const auto variations = sample_variations(problem.a, problem.b, opts.num_variations, opts.modes, opts.seed);

  Classification out;
  out.num_variations = opts.num_variations;
  double scale = 0.0;
  for (const auto& v : variations) {
    const SecondVariation sv = evaluate_kernel(kernel, v);
    out.sample_values.push_back(sv.value);
    scale = std::max(scale, sv.magnitude);
  }
  out.tolerance = opts.relative_tol * scale;
  const double tol = out.tolerance;
  const auto& vals = out.sample_values;
  if (std::all_of(vals.begin(), vals.end(), [tol](double s) { return s > tol; }))
    out.verdict = Verdict::Minimum;
  else if (std::all_of(vals.begin(), vals.end(), [tol](double s) { return s < -tol; }))
    out.verdict = Verdict::Maximum;
  else
    out.verdict = Verdict::Inconclusive;
  return out;
}

}  // namespace holder
