#pragma once

#include <functional>
#include <optional>
#include <string>

namespace holder {

/// A point of the jet (x, u(x), u'(x)) at which a feature is evaluated.
struct JetPoint {
  double x = 0.0;
  double u = 0.0;
  double du = 0.0;
};

/// Value of F together with its first and second partial derivatives.
/// Subscript `p` stands for the slope argument u'.
struct Partials {
  double f = 0.0;
  double fx = 0.0;
  double fu = 0.0;
  double fp = 0.0;
  double fuu = 0.0;
  double fup = 0.0;
  double fpp = 0.0;
  double fxp = 0.0;
};

/// Positive integrand F(x, u, u') of a first-order functional.
///
/// Partial derivatives come either from an analytic routine supplied at
/// construction or from central finite differences of `value`.
class Feature {
 public:
  using ValueFn = std::function<double(const JetPoint&)>;
  using PartialsFn = std::function<Partials(const JetPoint&)>;

  struct Flags {
    bool depends_on_x = true;
    bool depends_on_u = true;
    /// F is undefined at u = 0 and solvers must keep u above a floor.
    bool singular_at_zero_u = false;
  };

  Feature(std::string name, ValueFn value, Flags flags, std::optional<PartialsFn> partials = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  const Flags& flags() const noexcept { return flags_; }
  bool depends_on_x() const noexcept { return flags_.depends_on_x; }
  bool depends_on_u() const noexcept { return flags_.depends_on_u; }
  bool analytic_partials() const noexcept { return partials_.has_value(); }

  /// F at the jet point; throws NonPositiveFeature when F <= 0 or not finite.
  double value(const JetPoint& p) const;

  Partials partials(const JetPoint& p) const;

  /// Partials by central differences regardless of whether analytic ones exist.
  Partials finite_difference_partials(const JetPoint& p) const;

  /// Same feature with the analytic partials dropped.
  Feature without_analytic_partials() const;

 private:
  std::string name_;
  ValueFn value_;
  Flags flags_;
  std::optional<PartialsFn> partials_;
};

}  // namespace holder
