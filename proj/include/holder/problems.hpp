#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holder/centrality.hpp"
#include "holder/variational.hpp"

namespace holder {

enum class CatalogName { Arclength, Brachistochrone, SnellLinear, SnellLogistic, Custom };

std::string_view to_string(CatalogName name);
std::optional<CatalogName> catalog_name_from_string(std::string_view s);

/// Named constants of a closed-form family (s, d, k, p, r, ...).
using CurveParams = std::map<std::string, double, std::less<>>;

/// A closed-form stationary family of a catalog feature.
struct ClosedForm {
  std::string id;
  /// Human-readable condition on alpha, e.g. "alpha = 2".
  std::string alpha_condition;
  std::function<bool(double)> admits;
  /// Instantiates the family on [a, b]; missing constants fall back to family defaults.
  std::function<Curve(double a, double b, double alpha, const CurveParams&)> build;
};

/// Parameters of the logistic speed c(x)^2 = e^{beta (x - x0)} / (1 + e^{beta (x - x0)}).
struct LogisticSpeed {
  double beta = 2.0;
  double x0 = 5.0;
};

/// Speed profile c(x) of a Snell (least-time) feature F = sqrt(1 + u'^2) / c(x).
struct Speed {
  std::function<double(double)> c;
  std::function<double(double)> dc;
};

class CatalogEntry {
 public:
  CatalogEntry(CatalogName name, Feature feature, std::vector<ClosedForm> closed_forms,
               std::optional<Speed> speed = std::nullopt);

  CatalogName name() const noexcept { return name_; }
  const Feature& feature() const noexcept { return feature_; }
  const std::vector<ClosedForm>& closed_forms() const noexcept { return closed_forms_; }
  const std::optional<Speed>& speed() const noexcept { return speed_; }

  /// Throws std::out_of_range for unknown ids.
  const ClosedForm& closed_form(std::string_view id) const;

 private:
  CatalogName name_;
  Feature feature_;
  std::vector<ClosedForm> closed_forms_;
  std::optional<Speed> speed_;
};

CatalogEntry arclength_entry();
CatalogEntry brachistochrone_entry();
CatalogEntry snell_linear_entry();
CatalogEntry snell_logistic_entry(LogisticSpeed speed = {});
/// Compiled-in custom hooks; currently "exp_x" (F = e^x). Throws std::out_of_range otherwise.
CatalogEntry custom_entry(std::string_view hook);

/// u''(1 + (alpha - 1) u'^2): the shortest-path Euler-Lagrange factor.
double shortest_path_ode_factor(double alpha, const Curve& curve, double x);

/// Reduced first-order slope of a Snell problem from its conserved quantity k:
/// alpha = 1: u' = k c / sqrt(1 - k^2 c^2); alpha = 2: u' = k c^2.
double snell_reduced_slope(const CatalogEntry& entry, double alpha, double k, double x);

// Cycloid x = x_offset + r (theta - sin theta), u = r (1 - cos theta).

struct CycloidPoint {
  double x = 0.0;
  double u = 0.0;
};

CycloidPoint cycloid(double r, double theta);

/// A cycloid arc over the parameter window [theta_a, theta_b] inside (0, 2 pi).
struct CycloidArc {
  double r = 1.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double x_offset = 0.0;

  double x_at(double theta) const;
  double u_at(double theta) const;
  /// Inverts x(theta) on the arc window.
  double theta_at(double x) const;
  /// u, u', u'' of the graph u(x) at abscissa x.
  CurveSample graph_at(double x) const;
};

/// Cycloid with cusp at x_offset passing through (a, ua) and (b, ub), ua, ub > 0.
/// Newton on (theta_a, theta_b) with r = ua / (1 - cos theta_a).
CycloidArc fit_cycloid(double a, double ua, double b, double ub);

/// Resamples the arc onto n uniformly spaced abscissae with exact nodal derivatives.
Curve cycloid_curve(const CycloidArc& arc, std::size_t n);
Curve cycloid_curve(double r, double theta_min, double theta_max, std::size_t n);

// Table of stationary curves of the shortest-path problem.

enum class OdeBranch { LineFree, SlopeConstrained };
enum class Space { Real, Complex };

std::string_view to_string(OdeBranch b);

struct Table1Row {
  std::string alpha_range;
  OdeBranch branch;
  std::string feature_value;
  /// Empty when the table marks the test as undefined.
  std::optional<Verdict> expected_verdict;
  std::string slope_condition;
  Space space;
};

struct Table1Case {
  double alpha;
  OdeBranch branch;
  double slope;
  Verdict expected;
};

struct Table1Entry {
  Table1Row row;
  /// Empty for complex-space rows, which are documented but never executed.
  std::optional<Table1Case> test_case;
};

std::vector<Table1Entry> table1_matrix();

/// Arclength problem on [0, 1] through (0, 0) and (1, slope).
VariationalProblem table1_problem(const Table1Case& c);
Curve table1_curve(const Table1Case& c);

}  // namespace holder
