#pragma once

#include <functional>
#include <span>
#include <vector>

namespace holder {

/// u, u', u'' at one abscissa.
struct CurveSample {
  double u = 0.0;
  double du = 0.0;
  double ddu = 0.0;
};

/// A twice-differentiable curve u : [a, b] -> R.
///
/// Closed-form curves carry callables for u, u', u''. Grid curves hold n >= 3
/// uniformly spaced samples; their derivatives are second-order finite
/// differences unless nodal derivatives were supplied explicitly.
class Curve {
 public:
  using Fn = std::function<double(double)>;

  static Curve closed_form(double a, double b, Fn u, Fn du, Fn ddu);
  static Curve line(double a, double b, double slope, double intercept);
  /// Straight chord through (a, ua) and (b, ub).
  static Curve chord(double a, double b, double ua, double ub);
  static Curve from_grid(double a, double b, std::vector<double> u);
  static Curve from_samples(double a, double b, std::vector<double> u, std::vector<double> du,
                            std::vector<double> ddu);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  bool is_grid() const noexcept { return !u_.empty(); }

  /// Throws DomainMismatch outside [a, b].
  CurveSample at(double x) const;
  double value(double x) const { return at(x).u; }

  // Grid access; empty spans for closed-form curves.
  std::size_t size() const noexcept { return u_.size(); }
  double step() const noexcept;
  double node(std::size_t i) const noexcept { return a_ + static_cast<double>(i) * step(); }
  std::span<const double> values() const noexcept { return u_; }
  std::span<const double> slopes() const noexcept { return du_; }
  std::span<const double> curvatures() const noexcept { return ddu_; }
  CurveSample at_node(std::size_t i) const { return {u_.at(i), du_.at(i), ddu_.at(i)}; }

 private:
  Curve(double a, double b);

  double a_;
  double b_;
  Fn u_fn_;
  Fn du_fn_;
  Fn ddu_fn_;
  std::vector<double> u_;
  std::vector<double> du_;
  std::vector<double> ddu_;
};

/// Nodal first and second derivatives of uniformly spaced samples: central
/// differences inside, second-order one-sided differences at both ends.
void grid_derivatives(std::span<const double> u, double h, std::span<double> du, std::span<double> ddu);

}  // namespace holder
