#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "holder/centrality.hpp"

namespace holder {

/// Admissible variation h(x) = sum_k c_k sin(k pi (x - a) / delta), k = 1..K.
class Variation {
 public:
  Variation(double a, double b, std::vector<double> coefficients);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  double value(double x) const;
  double slope(double x) const;

 private:
  double a_;
  double b_;
  std::vector<double> coeffs_;
};

enum class Verdict { Minimum, Maximum, Inconclusive };

std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> sample_values;
  int num_variations = 0;
  /// Threshold a sample had to clear to count as strictly signed.
  double tolerance = 0.0;
};

enum class ConservedKind { Beltrami1, Beltrami2, IgnorableU1, IgnorableU2, LogBeltrami0, LogIgnorable0 };

std::string_view to_string(ConservedKind kind);

/// Which quadratic form is used as the second variation when alpha = 0.
enum class Alpha0SecondVariation {
  /// int (1/F) d2F - (1/F^2) (dF)^2: the full second variation of int ln F.
  Full,
  /// int (1/F) d2F only: sufficient test obtained by dropping the non-negative term.
  SufficientTest,
};

struct SecondVariationOptions {
  QuadratureOptions quadrature{};
  Alpha0SecondVariation alpha0 = Alpha0SecondVariation::Full;
  /// Max |residual| allowed before the curve counts as stationary.
  double stationarity_tol = 1e-4;
};

/// Generalized Euler-Lagrange residual at a jet point:
/// F (d/dx F_u' - F_u) + (alpha - 1) F_u' dF/dx, with total derivatives
/// expanded by the chain rule using u''. Signed so that for the arclength
/// feature it is u''(1 + (alpha - 1) u'^2) / (1 + u'^2).
double el_residual(const Feature& feature, double alpha, const JetPoint& p, double ddu);
double el_residual(const VariationalProblem& problem, const Curve& curve, double x);

/// d/dx d(ln F)/du' - d(ln F)/du.
double el_residual_alpha0(const Feature& feature, const JetPoint& p, double ddu);
double el_residual_alpha0(const VariationalProblem& problem, const Curve& curve, double x);

/// Dispatches on problem.alpha between the two residuals above.
double stationarity_residual(const Feature& feature, double alpha, const JetPoint& p, double ddu);

/// Max |stationarity residual| over interior evaluation nodes of the curve.
double max_stationarity_residual(const VariationalProblem& problem, const Curve& curve,
                                 const QuadratureOptions& opts = {});

double conserved_quantity(const VariationalProblem& problem, const Curve& curve, double x, ConservedKind kind);

/// Value and absolute term magnitude of the second variation.
struct SecondVariation {
  double value = 0.0;
  /// Same integral with every summand replaced by its absolute value.
  double magnitude = 0.0;
};

SecondVariation second_variation_terms(const VariationalProblem& problem, const Curve& curve,
                                       const Variation& variation, const SecondVariationOptions& opts = {});

/// alpha != 0: (1/(alpha delta)) int d2(F^alpha)/de2 dx.
/// alpha == 0: (1/delta) int [(1/F) d2F - (1/F^2)(dF)^2] dx (or the sufficient test).
/// Throws NotStationary if the curve fails the stationarity gate.
double second_variation(const VariationalProblem& problem, const Curve& curve, const Variation& variation,
                        const SecondVariationOptions& opts = {});

struct ClassifyOptions {
  int num_variations = 32;
  int modes = 8;
  std::uint64_t seed = 0;
  /// Relative threshold applied to the cancellation-aware scale.
  double relative_tol = 1e-9;
  SecondVariationOptions second_variation{};
};

/// Random Fourier-sine variations, deterministic in `seed`.
std::vector<Variation> sample_variations(double a, double b, int count, int modes, std::uint64_t seed);

Classification classify(const VariationalProblem& problem, const Curve& curve, const ClassifyOptions& opts = {});

}  // namespace holder
