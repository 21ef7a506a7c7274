#include "holder/feature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "holder/errors.hpp"

namespace holder {

namespace {

// Steps for first and second central differences, scaled with the argument.
double first_step(double v) { return 1e-5 * std::max(1.0, std::abs(v)); }
double second_step(double v) { return 1e-4 * std::max(1.0, std::abs(v)); }

}  // namespace

Feature::Feature(std::string name, ValueFn value, Flags flags, std::optional<PartialsFn> partials)
    : name_(std::move(name)), value_(std::move(value)), flags_(flags), partials_(std::move(partials)) {}

double Feature::value(const JetPoint& p) const {
  const double f = value_(p);
  if (!std::isfinite(f) || f <= 0.0) throw NonPositiveFeature(p.x);
  return f;
}

Partials Feature::partials(const JetPoint& p) const {
  if (partials_) {
    Partials d = (*partials_)(p);
    if (!std::isfinite(d.f) || d.f <= 0.0) throw NonPositiveFeature(p.x);
    return d;
  }
  return finite_difference_partials(p);
}

Partials Feature::finite_difference_partials(const JetPoint& p) const {
  auto F = [this](double x, double u, double du) { return value({x, u, du}); };
  Partials d;
  d.f = F(p.x, p.u, p.du);

  const double hp = first_step(p.du);
  const double Hp = second_step(p.du);
  d.fp = (F(p.x, p.u, p.du + hp) - F(p.x, p.u, p.du - hp)) / (2 * hp);
  d.fpp = (F(p.x, p.u, p.du + Hp) - 2 * d.f + F(p.x, p.u, p.du - Hp)) / (Hp * Hp);

  if (flags_.depends_on_u) {
    const double hu = first_step(p.u);
    const double Hu = second_step(p.u);
    d.fu = (F(p.x, p.u + hu, p.du) - F(p.x, p.u - hu, p.du)) / (2 * hu);
    d.fuu = (F(p.x, p.u + Hu, p.du) - 2 * d.f + F(p.x, p.u - Hu, p.du)) / (Hu * Hu);
    d.fup = (F(p.x, p.u + Hu, p.du + Hp) - F(p.x, p.u + Hu, p.du - Hp) - F(p.x, p.u - Hu, p.du + Hp) +
             F(p.x, p.u - Hu, p.du - Hp)) /
            (4 * Hu * Hp);
  }
  if (flags_.depends_on_x) {
    const double hx = first_step(p.x);
    const double Hx = second_step(p.x);
    d.fx = (F(p.x + hx, p.u, p.du) - F(p.x - hx, p.u, p.du)) / (2 * hx);
    d.fxp = (F(p.x + Hx, p.u, p.du + Hp) - F(p.x + Hx, p.u, p.du - Hp) - F(p.x - Hx, p.u, p.du + Hp) +
             F(p.x - Hx, p.u, p.du - Hp)) /
            (4 * Hx * Hp);
  }
  return d;
}

Feature Feature::without_analytic_partials() const { return Feature(name_, value_, flags_); }

}  // namespace holder
