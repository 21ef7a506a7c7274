#include "holder/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "holder/errors.hpp"

namespace holder {

using std::numbers::pi;

std::string_view to_string(CatalogName name) {
  switch (name) {
    case CatalogName::Arclength: return "arclength";
    case CatalogName::Brachistochrone: return "brachistochrone";
    case CatalogName::SnellLinear: return "snell_linear";
    case CatalogName::SnellLogistic: return "snell_logistic";
    case CatalogName::Custom: return "custom";
  }
  return "?";
}

std::optional<CatalogName> catalog_name_from_string(std::string_view s) {
  for (auto n : {CatalogName::Arclength, CatalogName::Brachistochrone, CatalogName::SnellLinear,
                 CatalogName::SnellLogistic, CatalogName::Custom})
    if (to_string(n) == s) return n;
  return std::nullopt;
}

CatalogEntry::CatalogEntry(CatalogName name, Feature feature, std::vector<ClosedForm> closed_forms,
                           std::optional<Speed> speed)
    : name_(name), feature_(std::move(feature)), closed_forms_(std::move(closed_forms)), speed_(std::move(speed)) {}

const ClosedForm& CatalogEntry::closed_form(std::string_view id) const {
  for (const auto& cf : closed_forms_)
    if (cf.id == id) return cf;
  throw std::out_of_range("no closed form '" + std::string(id) + "' for " + std::string(to_string(name_)));
}

namespace {

double param(const CurveParams& params, std::string_view key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool near(double alpha, double target) { return std::abs(alpha - target) < 1e-12; }

ClosedForm line_family(std::string condition, std::function<bool(double)> admits) {
  return {"line", std::move(condition), std::move(admits), [](double a, double b, double, const CurveParams& p) {
            return Curve::line(a, b, param(p, "s", 1.0), param(p, "d", 0.0));
          }};
}

/// ln(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) { return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

Feature snell_feature(std::string name, Speed speed) {
  auto value = [c = speed.c](const JetPoint& p) { return std::sqrt(1.0 + p.du * p.du) / c(p.x); };
  auto partials = [speed](const JetPoint& p) {
    const double c = speed.c(p.x);
    const double dc = speed.dc(p.x);
    const double q = 1.0 + p.du * p.du;
    const double sq = std::sqrt(q);
    Partials d;
    d.f = sq / c;
    d.fx = -sq * dc / (c * c);
    d.fp = p.du / (sq * c);
    d.fpp = 1.0 / (q * sq * c);
    d.fxp = -p.du * dc / (sq * c * c);
    return d;
  };
  return Feature(std::move(name), value, {.depends_on_x = true, .depends_on_u = false}, partials);
}

}  // namespace

CatalogEntry arclength_entry() {
  Feature f(
      "arclength", [](const JetPoint& p) { return std::sqrt(1.0 + p.du * p.du); },
      {.depends_on_x = false, .depends_on_u = false},
      [](const JetPoint& p) {
        const double q = 1.0 + p.du * p.du;
        Partials d;
        d.f = std::sqrt(q);
        d.fp = p.du / d.f;
        d.fpp = 1.0 / (q * d.f);
        return d;
      });
  std::vector<ClosedForm> forms;
  forms.push_back(line_family("any alpha", [](double) { return true; }));
  forms.push_back({"slope_constrained", "alpha < 1", [](double alpha) { return alpha < 1.0; },
                   [](double a, double b, double alpha, const CurveParams& p) {
                     const double sign = param(p, "sign", -1.0) < 0 ? -1.0 : 1.0;
                     return Curve::line(a, b, sign / std::sqrt(1.0 - alpha), param(p, "d", 0.0));
                   }});
  return CatalogEntry(CatalogName::Arclength, std::move(f), std::move(forms));
}

CatalogEntry brachistochrone_entry() {
  Feature f(
      "brachistochrone",
      [](const JetPoint& p) {
        return p.u > 0 ? std::sqrt((1.0 + p.du * p.du) / p.u) : std::numeric_limits<double>::quiet_NaN();
      },
      {.depends_on_x = false, .depends_on_u = true, .singular_at_zero_u = true},
      [](const JetPoint& p) {
        Partials d;
        if (!(p.u > 0)) {
          d.f = std::numeric_limits<double>::quiet_NaN();
          return d;
        }
        const double q = 1.0 + p.du * p.du;
        const double sq = std::sqrt(q);
        const double su = std::sqrt(p.u);
        d.f = sq / su;
        d.fu = -0.5 * sq / (p.u * su);
        d.fp = p.du / (sq * su);
        d.fuu = 0.75 * sq / (p.u * p.u * su);
        d.fup = -0.5 * p.du / (sq * p.u * su);
        d.fpp = 1.0 / (q * sq * su);
        return d;
      });
  std::vector<ClosedForm> forms;
  forms.push_back({"cycloid", "alpha = 1", [](double alpha) { return near(alpha, 1.0); },
                   [](double a, double b, double, const CurveParams& p) {
                     CycloidArc arc{param(p, "r", 1.0), 0.0, 0.0, param(p, "x_offset", 0.0)};
                     arc.theta_a = 0.0;
                     arc.theta_b = 2 * pi;
                     const double ta = arc.theta_at(a);
                     const double tb = arc.theta_at(b);
                     arc.theta_a = ta;
                     arc.theta_b = tb;
                     return cycloid_curve(arc, static_cast<std::size_t>(param(p, "n", 2001)));
                   }});
  forms.push_back({"stationary_line", "alpha > 1", [](double alpha) { return alpha > 1.0; },
                   [](double a, double b, double alpha, const CurveParams& p) {
                     return Curve::line(a, b, 1.0 / std::sqrt(alpha - 1.0), param(p, "d", 0.0));
                   }});
  return CatalogEntry(CatalogName::Brachistochrone, std::move(f), std::move(forms));
}

CatalogEntry snell_linear_entry() {
  Speed speed{[](double x) { return x; }, [](double) { return 1.0; }};
  std::vector<ClosedForm> forms;
  forms.push_back({"circle", "alpha = 1", [](double alpha) { return near(alpha, 1.0); },
                   [](double a, double b, double, const CurveParams& p) {
                     const double k = param(p, "k", 0.5);
                     const double c = param(p, "p", 0.0);
                     return Curve::closed_form(
                         a, b, [=](double x) { return c - std::sqrt(1.0 - k * k * x * x) / k; },
                         [=](double x) { return k * x / std::sqrt(1.0 - k * k * x * x); },
                         [=](double x) { return k / std::pow(1.0 - k * k * x * x, 1.5); });
                   }});
  forms.push_back({"cubic", "alpha = 2", [](double alpha) { return near(alpha, 2.0); },
                   [](double a, double b, double, const CurveParams& p) {
                     const double k = param(p, "k", 1.0);
                     const double c = param(p, "p", 0.0);
                     return Curve::closed_form(
                         a, b, [=](double x) { return k * x * x * x / 3.0 + c; }, [=](double x) { return k * x * x; },
                         [=](double x) { return 2.0 * k * x; });
                   }});
  forms.push_back(line_family("alpha = 0", [](double alpha) { return near(alpha, 0.0); }));
  return CatalogEntry(CatalogName::SnellLinear, snell_feature("snell_linear", speed), std::move(forms), speed);
}

CatalogEntry snell_logistic_entry(LogisticSpeed ls) {
  if (!(ls.beta > 0)) throw std::invalid_argument("logistic speed needs beta > 0");
  const double beta = ls.beta;
  const double x0 = ls.x0;
  Speed speed{[=](double x) { return std::sqrt(logistic(beta * (x - x0))); },
              [=](double x) {
                const double s = logistic(beta * (x - x0));
                return std::sqrt(s) * beta * (1.0 - s) / 2.0;
              }};
  std::vector<ClosedForm> forms;
  forms.push_back({"logistic", "alpha = 2", [](double alpha) { return near(alpha, 2.0); },
                   [=](double a, double b, double, const CurveParams& p) {
                     const double k = param(p, "k", 1.0);
                     const double c = param(p, "p", 0.0);
                     return Curve::closed_form(
                         a, b, [=](double x) { return k * softplus(beta * (x - x0)) / beta + c; },
                         [=](double x) { return k * logistic(beta * (x - x0)); },
                         [=](double x) {
                           const double s = logistic(beta * (x - x0));
                           return k * beta * s * (1.0 - s);
                         });
                   }});
  forms.push_back(line_family("alpha = 0", [](double alpha) { return near(alpha, 0.0); }));
  return CatalogEntry(CatalogName::SnellLogistic, snell_feature("snell_logistic", speed), std::move(forms), speed);
}

CatalogEntry custom_entry(std::string_view hook) {
  if (hook == "exp_x") {
    Feature f(
        "exp_x", [](const JetPoint& p) { return std::exp(p.x); }, {.depends_on_x = true, .depends_on_u = false},
        [](const JetPoint& p) {
          Partials d;
          d.f = std::exp(p.x);
          d.fx = d.f;
          return d;
        });
    return CatalogEntry(CatalogName::Custom, std::move(f), {});
  }
  throw std::out_of_range("unknown custom feature hook '" + std::string(hook) + "'");
}

double shortest_path_ode_factor(double alpha, const Curve& curve, double x) {
  const CurveSample s = curve.at(x);
  return s.ddu * (1.0 + (alpha - 1.0) * s.du * s.du);
}

double snell_reduced_slope(const CatalogEntry& entry, double alpha, double k, double x) {
  if (!entry.speed()) throw std::invalid_argument("reduced slope needs a Snell feature");
  const double c = entry.speed()->c(x);
  if (near(alpha, 1.0)) {
    const double radicand = 1.0 - k * k * c * c;
    if (!(radicand > 0)) throw SquareRootDomain(x);
    return k * c / std::sqrt(radicand);
  }
  if (near(alpha, 2.0)) return k * c * c;
  throw std::invalid_argument("reduced slope is known only for alpha = 1 and alpha = 2");
}

// -- cycloid --------------------------------------------------------------

CycloidPoint cycloid(double r, double theta) {
  if (!(r > 0)) throw DegenerateRadius(r);
  if (!(theta > 0 && theta < 2 * pi)) throw std::invalid_argument("cycloid parameter must lie in (0, 2 pi)");
  return {r * (theta - std::sin(theta)), r * (1.0 - std::cos(theta))};
}

double CycloidArc::x_at(double theta) const { return x_offset + r * (theta - std::sin(theta)); }
double CycloidArc::u_at(double theta) const { return r * (1.0 - std::cos(theta)); }

double CycloidArc::theta_at(double x) const {
  if (!(r > 0)) throw DegenerateRadius(r);
  // x(theta) is strictly increasing on [0, 2 pi]; safeguarded Newton on that bracket.
  double lo = 0.0;
  double hi = 2 * pi;
  const double target = x - x_offset;
  if (target < -1e-12 * r || target > 2 * pi * r * (1 + 1e-12))
    throw DomainMismatch("abscissa outside the cycloid arch");
  double t = std::clamp(std::cbrt(6.0 * std::max(target, 0.0) / r), lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double g = r * (t - std::sin(t)) - target;
    if (g == 0.0) return t;
    if (g > 0) hi = t; else lo = t;
    const double dg = r * (1.0 - std::cos(t));
    double next = dg > 0 ? t - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 2 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) return next;
    t = next;
  }
  return t;
}

CurveSample CycloidArc::graph_at(double x) const {
  const double t = theta_at(x);
  const double one_minus_cos = 1.0 - std::cos(t);
  return {r * one_minus_cos, std::sin(t) / one_minus_cos, -1.0 / (r * one_minus_cos * one_minus_cos)};
}

CycloidArc fit_cycloid(double a, double ua, double b, double ub) {
  if (!(ua > 0 && ub > 0)) throw std::invalid_argument("cycloid fit needs positive end heights");
  if (!(b > a)) throw std::invalid_argument("cycloid fit needs a < b");
  const double span = b - a;
  auto solve_from = [&](double ta, double tb) -> std::optional<CycloidArc> {
    for (int it = 0; it < 100; ++it) {
      const double ca = std::cos(ta), sa = std::sin(ta), cb = std::cos(tb), sb = std::sin(tb);
      const double r = ua / (1.0 - ca);
      const double dr = -ua * sa / ((1.0 - ca) * (1.0 - ca));
      const double arc = tb - sb - ta + sa;
      const double e1 = r * (1.0 - cb) - ub;
      const double e2 = r * arc - span;
      if (std::abs(e1) < 1e-13 * std::max(1.0, ub) && std::abs(e2) < 1e-13 * std::max(1.0, span))
        return CycloidArc{r, ta, tb, a - r * (ta - sa)};
      const double j11 = dr * (1.0 - cb), j12 = r * sb;
      const double j21 = dr * arc + r * (ca - 1.0), j22 = r * (1.0 - cb);
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
      double dta = -(e1 * j22 - e2 * j12) / det;
      double dtb = -(j11 * e2 - j21 * e1) / det;
      // keep 0 < ta < tb < 2 pi
      double lambda = 1.0;
      while (lambda > 1e-6 && !(ta + lambda * dta > 0 && tb + lambda * dtb < 2 * pi && ta + lambda * dta < tb + lambda * dtb))
        lambda *= 0.5;
      ta += lambda * dta;
      tb += lambda * dtb;
    }
    return std::nullopt;
  };
  for (double ta : {pi / 2, pi / 4, pi / 8, 3 * pi / 4, pi / 16})
    for (double tb : {3 * pi / 2, pi, 5 * pi / 4, 7 * pi / 4, 3 * pi / 4})
      if (ta < tb)
        if (auto arc = solve_from(ta, tb)) return *arc;
  throw Error("no cycloid arc through the given end points");
}

Curve cycloid_curve(const CycloidArc& arc, std::size_t n) {
  if (!(arc.r > 0)) throw DegenerateRadius(arc.r);
  if (!(arc.theta_a > 0 && arc.theta_b < 2 * pi && arc.theta_a < arc.theta_b))
    throw std::invalid_argument("cycloid window must satisfy 0 < theta_a < theta_b < 2 pi");
  if (n < 3) throw std::invalid_argument("need at least 3 samples");
  const double xa = arc.x_at(arc.theta_a);
  const double xb = arc.x_at(arc.theta_b);
  std::vector<double> u(n), du(n), ddu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? xb : xa + (xb - xa) * static_cast<double>(i) / static_cast<double>(n - 1);
    const CurveSample s = arc.graph_at(x);
    u[i] = s.u;
    du[i] = s.du;
    ddu[i] = s.ddu;
  }
  return Curve::from_samples(xa, xb, std::move(u), std::move(du), std::move(ddu));
}

Curve cycloid_curve(double r, double theta_min, double theta_max, std::size_t n) {
  return cycloid_curve(CycloidArc{r, theta_min, theta_max, 0.0}, n);
}

// -- shortest-path table --------------------------------------------------

std::string_view to_string(OdeBranch b) {
  return b == OdeBranch::LineFree ? "line" : "slope_constrained";
}

std::vector<Table1Entry> table1_matrix() {
  using enum OdeBranch;
  using enum Verdict;
  const double sqrt2 = std::numbers::sqrt2;
  std::vector<Table1Entry> t;
  auto row = [](std::string range, OdeBranch b, std::string f, std::optional<Verdict> v, std::string cond, Space s) {
    return Table1Row{std::move(range), b, std::move(f), v, std::move(cond), s};
  };
  t.push_back({row(">2", SlopeConstrained, "sqrt(1+1/(alpha-1))", Minimum, "u' = -/+ i/sqrt(alpha-1)", Space::Complex), {}});
  t.push_back({row(">2", LineFree, "sqrt(1+s^2)", Minimum, "any s", Space::Real), Table1Case{3.0, LineFree, 0.5, Minimum}});
  t.push_back({row("2", SlopeConstrained, "0", Minimum, "u' = -/+ i", Space::Complex), {}});
  t.push_back({row("2", LineFree, "sqrt(1+s^2)", Minimum, "any s", Space::Real), Table1Case{2.0, LineFree, 1.0, Minimum}});
  t.push_back({row("]1,2[", SlopeConstrained, "undefined", std::nullopt, "u' = -/+ i/sqrt(alpha-1)", Space::Complex), {}});
  t.push_back({row("]1,2[", LineFree, "sqrt(1+s^2)", Minimum, "any s", Space::Real), Table1Case{1.5, LineFree, 2.0, Minimum}});
  t.push_back({row("1", LineFree, "sqrt(1+s^2)", Minimum, "any s", Space::Real), Table1Case{1.0, LineFree, 1.0, Minimum}});
  t.push_back({row("]0,1[", SlopeConstrained, "sqrt(1+1/(1-alpha))", Maximum, "s = -/+ 1/sqrt(1-alpha)", Space::Real),
               Table1Case{0.5, SlopeConstrained, -sqrt2, Maximum}});
  t.push_back({row("]0,1[", LineFree, "sqrt(1+s^2)", Minimum, "minimum if s^2 < 1", Space::Real),
               Table1Case{0.5, LineFree, 0.5, Minimum}});
  t.push_back({row("0", LineFree, "sqrt(1+s^2)", Minimum, "minimum if s in ]-1,1[", Space::Real),
               Table1Case{0.0, LineFree, 0.5, Minimum}});
  t.push_back({row("0", LineFree, "sqrt(1+s^2)", Maximum, "maximum if |s| > 1", Space::Real),
               Table1Case{0.0, LineFree, 2.0, Maximum}});
  t.push_back({row("0", SlopeConstrained, "sqrt(2)", Inconclusive, "u' = -/+ 1", Space::Real),
               Table1Case{0.0, SlopeConstrained, 1.0, Inconclusive}});
  t.push_back({row("<0", SlopeConstrained, "sqrt(1+1/(1-alpha))", Minimum, "s = -/+ 1/sqrt(1-alpha)", Space::Real),
               Table1Case{-1.0, SlopeConstrained, -1.0 / sqrt2, Minimum}});
  t.push_back({row("<0", LineFree, "sqrt(1+s^2)", Minimum, "minimum if s in ]-1,1[", Space::Real),
               Table1Case{-1.0, LineFree, 0.5, Minimum}});
  return t;
}

VariationalProblem table1_problem(const Table1Case& c) {
  return VariationalProblem(arclength_entry().feature(), 0.0, 1.0, 0.0, c.slope, c.alpha);
}

Curve table1_curve(const Table1Case& c) { return Curve::line(0.0, 1.0, c.slope, 0.0); }

}  // namespace holder
