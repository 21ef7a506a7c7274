#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "holder/centrality.hpp"
#include "holder/errors.hpp"
#include "holder/problems.hpp"
#include "holder/variational.hpp"

namespace holder {

struct SolverConfig {
  /// Odd, >= 11.
  std::size_t grid_points = 401;
  int max_newton_iters = 100;
  /// Target RMS of the discretized interior equations.
  double residual_tol = 1e-10;
  double min_damping = 0x1p-20;
  /// Lower bound on u for features singular at u = 0.
  double u_floor = 1e-8;
  /// Retry from chord + 0.5 sin(pi (x - a)/delta) when the chord start diverges.
  bool sag_fallback = true;
  ClassifyOptions classify{};

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct SolveReport {
  Curve curve;
  double final_residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  Classification classification;
  /// Boundary values actually imposed (after flooring).
  double ua = 0.0;
  double ub = 0.0;
};

/// Iteration cap or damping floor hit; carries the best iterate.
class SolverDiverged : public Error {
 public:
  SolverDiverged(const std::string& what, SolveReport best) : Error(what), best_(std::move(best)) {}
  const SolveReport& best() const noexcept { return best_; }

 private:
  SolveReport best_;
};

/// Damped Newton on the central-difference collocation of the stationarity ODE.
SolveReport solve_bvp(const VariationalProblem& problem, const SolverConfig& config = {},
                      const std::optional<Curve>& initial_guess = std::nullopt);

/// Discretized interior residuals for grid values u (size n, boundary values included).
std::vector<double> discrete_residual(const VariationalProblem& problem, std::span<const double> u, double h);

/// Reduced slope u' = g(x, u) of a first integral.
using ReducedSlope = std::function<double(double x, double u)>;

/// Classical RK4 for u' = g(x, u) from (x0, u0) across the solver grid on [problem.a, problem.b].
Curve solve_ivp_reduced(const VariationalProblem& problem, const ReducedSlope& slope, double x0, double u0,
                        std::size_t grid_points = 401);

/// Catalog-driven form: the reduced slope follows from the conserved quantity of `kind`
/// held at `constant_value` (IgnorableU1 with alpha = 1, IgnorableU2 with alpha = 2).
Curve solve_ivp_reduced(const CatalogEntry& entry, const VariationalProblem& problem, ConservedKind kind,
                        double constant_value, double x0, double u0, std::size_t grid_points = 401);

}  // namespace holder
