#include "holder/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "holder/errors.hpp"

namespace holder {

Curve::Curve(double a, double b) : a_(a), b_(b) {
  if (!(a < b)) throw std::invalid_argument("curve domain needs a < b");
}

Curve Curve::closed_form(double a, double b, Fn u, Fn du, Fn ddu) {
  Curve c(a, b);
  c.u_fn_ = std::move(u);
  c.du_fn_ = std::move(du);
  c.ddu_fn_ = std::move(ddu);
  return c;
}

Curve Curve::line(double a, double b, double slope, double intercept) {
  return closed_form(
      a, b, [=](double x) { return slope * x + intercept; }, [=](double) { return slope; },
      [](double) { return 0.0; });
}

Curve Curve::chord(double a, double b, double ua, double ub) {
  const double s = (ub - ua) / (b - a);
  return line(a, b, s, ua - s * a);
}

void grid_derivatives(std::span<const double> u, double h, std::span<double> du, std::span<double> ddu) {
  const std::size_t n = u.size();
  if (n < 3) throw std::invalid_argument("grid needs at least 3 samples");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    du[i] = (u[i + 1] - u[i - 1]) / (2 * h);
    ddu[i] = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
  }
  du[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * h);
  du[n - 1] = (3 * u[n - 1] - 4 * u[n - 2] + u[n - 3]) / (2 * h);
  if (n >= 4) {
    ddu[0] = (2 * u[0] - 5 * u[1] + 4 * u[2] - u[3]) / (h * h);
    ddu[n - 1] = (2 * u[n - 1] - 5 * u[n - 2] + 4 * u[n - 3] - u[n - 4]) / (h * h);
  } else {
    ddu[0] = ddu[n - 1] = ddu[1];
  }
}

Curve Curve::from_grid(double a, double b, std::vector<double> u) {
  if (u.size() < 3) throw std::invalid_argument("grid curve needs at least 3 samples");
  Curve c(a, b);
  c.u_ = std::move(u);
  c.du_.resize(c.u_.size());
  c.ddu_.resize(c.u_.size());
  grid_derivatives(c.u_, c.step(), c.du_, c.ddu_);
  return c;
}

Curve Curve::from_samples(double a, double b, std::vector<double> u, std::vector<double> du,
                          std::vector<double> ddu) {
  if (u.size() < 3) throw std::invalid_argument("grid curve needs at least 3 samples");
  if (du.size() != u.size() || ddu.size() != u.size())
    throw std::invalid_argument("sample arrays must have equal length");
  Curve c(a, b);
  c.u_ = std::move(u);
  c.du_ = std::move(du);
  c.ddu_ = std::move(ddu);
  return c;
}

double Curve::step() const noexcept {
  return u_.size() < 2 ? 0.0 : (b_ - a_) / static_cast<double>(u_.size() - 1);
}

CurveSample Curve::at(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(b_ - a_));
  if (!(x >= a_ - slack && x <= b_ + slack)) throw DomainMismatch("x = " + std::to_string(x) + " outside curve domain");
  x = std::clamp(x, a_, b_);
  if (!is_grid()) return {u_fn_(x), du_fn_(x), ddu_fn_(x)};

  const double h = step();
  const double t = (x - a_) / h;
  const double nearest = std::round(t);
  if (std::abs(t - nearest) < 1e-9) return at_node(static_cast<std::size_t>(nearest));

  // Cubic Hermite for u; linear interpolation of the nodal derivatives.
  const std::size_t i = std::min(static_cast<std::size_t>(t), u_.size() - 2);
  const double s = t - static_cast<double>(i);
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  CurveSample out;
  out.u = h00 * u_[i] + h10 * h * du_[i] + h01 * u_[i + 1] + h11 * h * du_[i + 1];
  out.du = (1 - s) * du_[i] + s * du_[i + 1];
  out.ddu = (1 - s) * ddu_[i] + s * ddu_[i + 1];
  return out;
}

}  // namespace holder
