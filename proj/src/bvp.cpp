#include "holder/bvp.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holder/errors.hpp"

namespace holder {

void SolverConfig::validate() const {
  if (grid_points < 11 || grid_points % 2 == 0) throw std::invalid_argument("grid_points must be odd and >= 11");
  if (max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be positive");
  if (!(residual_tol > 0)) throw std::invalid_argument("residual_tol must be positive");
  if (!(min_damping > 0 && min_damping <= 1)) throw std::invalid_argument("min_damping must lie in (0, 1]");
  if (!(u_floor > 0)) throw std::invalid_argument("u_floor must be positive");
}

std::vector<double> discrete_residual(const VariationalProblem& problem, std::span<const double> u, double h) {
  const std::size_t n = u.size();
  std::vector<double> r(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = problem.a + static_cast<double>(i) * h;
    const double du = (u[i + 1] - u[i - 1]) / (2 * h);
    const double ddu = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
    r[i - 1] = stationarity_residual(problem.feature, problem.alpha, {x, u[i], du}, ddu);
  }
  return r;
}

namespace {

double rms(std::span<const double> r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return r.empty() ? 0.0 : std::sqrt(s / static_cast<double>(r.size()));
}

struct NewtonOutcome {
  std::vector<double> u;
  double rms = INFINITY;
  int iterations = 0;
  bool converged = false;
  std::string failure;
};

class NewtonSolver {
 public:
  NewtonSolver(const VariationalProblem& problem, const SolverConfig& config, double h)
      : problem_(problem), config_(config), h_(h),
        singular_(problem.feature.flags().singular_at_zero_u) {}

  NewtonOutcome run(std::vector<double> u) const {
    NewtonOutcome out;
    out.u = std::move(u);
    auto res = try_residual(out.u);
    if (!res) {
      out.failure = "feature not evaluable on the initial guess";
      return out;
    }
    std::vector<double> r = std::move(*res);
    out.rms = rms(r);
    const std::size_t m = r.size();
    std::vector<double> dl(m - 1), d(m), du(m - 1), step(m);

    while (true) {
      if (out.rms <= config_.residual_tol) {
        out.converged = true;
        return out;
      }
      if (out.iterations >= config_.max_newton_iters) {
        out.failure = "Newton iteration cap reached";
        return out;
      }
      if (!jacobian(out.u, r, dl, d, du)) {
        out.failure = "feature not evaluable while forming the Jacobian";
        return out;
      }
      for (std::size_t k = 0; k < m; ++k) step[k] = -r[k];
      const lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, static_cast<lapack_int>(m), 1, dl.data(), d.data(),
                                            du.data(), step.data(), static_cast<lapack_int>(m));
      if (info != 0) {
        out.failure = "singular Newton Jacobian";
        return out;
      }

      bool accepted = false;
      std::vector<double> trial(out.u.size());
      for (double lambda = 1.0; lambda >= config_.min_damping; lambda *= 0.5) {
        trial = out.u;
        for (std::size_t k = 0; k < m; ++k) {
          trial[k + 1] += lambda * step[k];
          if (singular_) trial[k + 1] = std::max(trial[k + 1], config_.u_floor);
        }
        auto rt = try_residual(trial);
        if (!rt) continue;
        const double trial_rms = rms(*rt);
        if (trial_rms < out.rms) {
          out.u.swap(trial);
          r = std::move(*rt);
          out.rms = trial_rms;
          accepted = true;
          break;
        }
      }
      ++out.iterations;
      if (!accepted) {
        out.failure = "damping floor reached without residual decrease";
        return out;
      }
    }
  }

 private:
  std::optional<std::vector<double>> try_residual(std::span<const double> u) const {
    try {
      return discrete_residual(problem_, u, h_);
    } catch (const NonPositiveFeature&) {
      return std::nullopt;
    }
  }

  // Tridiagonal finite-difference Jacobian; unknowns three apart share one residual evaluation.
  bool jacobian(const std::vector<double>& u, const std::vector<double>& r, std::vector<double>& dl,
                std::vector<double>& d, std::vector<double>& du) const {
    const std::size_t m = r.size();
    std::vector<double> perturbed(u);
    for (std::size_t color = 0; color < 3; ++color) {
      perturbed = u;
      for (std::size_t k = color; k < m; k += 3) perturbed[k + 1] += 1e-7 * (1.0 + std::abs(u[k + 1]));
      auto rp = try_residual(perturbed);
      if (!rp) return false;
      for (std::size_t k = color; k < m; k += 3) {
        const double eps = perturbed[k + 1] - u[k + 1];
        d[k] = ((*rp)[k] - r[k]) / eps;
        if (k > 0) du[k - 1] = ((*rp)[k - 1] - r[k - 1]) / eps;
        if (k + 1 < m) dl[k] = ((*rp)[k + 1] - r[k + 1]) / eps;
      }
    }
    return true;
  }

  const VariationalProblem& problem_;
  const SolverConfig& config_;
  double h_;
  bool singular_;
};

}  // namespace

SolveReport solve_bvp(const VariationalProblem& problem, const SolverConfig& config,
                      const std::optional<Curve>& initial_guess) {
  config.validate();
  const bool singular = problem.feature.flags().singular_at_zero_u;
  const double ua = singular ? std::max(problem.ua, config.u_floor) : problem.ua;
  const double ub = singular ? std::max(problem.ub, config.u_floor) : problem.ub;
  VariationalProblem effective = problem;
  effective.ua = ua;
  effective.ub = ub;

  const std::size_t n = config.grid_points;
  const double h = problem.delta() / static_cast<double>(n - 1);
  auto node = [&](std::size_t i) { return problem.a + static_cast<double>(i) * h; };

  auto sampled = [&](auto&& fn) {
    std::vector<double> u(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      u[i] = fn(node(i));
      if (singular) u[i] = std::max(u[i], config.u_floor);
    }
    u.front() = ua;
    u.back() = ub;
    return u;
  };
  const Curve chord = Curve::chord(problem.a, problem.b, ua, ub);

  std::vector<double> start;
  if (initial_guess) {
    if (std::abs(initial_guess->a() - problem.a) > 1e-9 * problem.delta() ||
        std::abs(initial_guess->b() - problem.b) > 1e-9 * problem.delta())
      throw DomainMismatch("initial guess domain differs from problem interval");
    start = sampled([&](double x) { return initial_guess->value(x); });
  } else {
    start = sampled([&](double x) { return chord.value(x); });
  }

  const NewtonSolver solver(effective, config, h);
  NewtonOutcome outcome = solver.run(start);
  if (!outcome.converged && !initial_guess && config.sag_fallback) {
    NewtonOutcome sag = solver.run(sampled([&](double x) {
      return chord.value(x) + 0.5 * std::sin(std::numbers::pi * (x - problem.a) / problem.delta());
    }));
    const int spent = outcome.iterations;
    if (sag.converged || sag.rms < outcome.rms) outcome = std::move(sag);
    outcome.iterations += spent;
  }

  if (!std::isfinite(outcome.rms) && !outcome.converged)
    throw SingularFeature("feature not positive on the initial guess even after flooring u");

  SolveReport report{Curve::from_grid(problem.a, problem.b, outcome.u), outcome.rms, outcome.iterations,
                     outcome.converged, {}, ua, ub};
  if (!outcome.converged) throw SolverDiverged(outcome.failure, std::move(report));
  report.classification = classify(effective, report.curve, config.classify);
  return report;
}

// -- reduced first-order problems -------------------------------------------

namespace {

double rk4_step(const ReducedSlope& g, double x, double u, double h) {
  const double k1 = g(x, u);
  const double k2 = g(x + 0.5 * h, u + 0.5 * h * k1);
  const double k3 = g(x + 0.5 * h, u + 0.5 * h * k2);
  const double k4 = g(x + h, u + h * k3);
  return u + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
}

// RK4 across one grid interval, halving the step where step doubling disagrees
// (the reduced slopes can steepen sharply near the edge of their domain).
double rk4_span(const ReducedSlope& g, double x, double u, double h, int depth = 0) {
  const double whole = rk4_step(g, x, u, h);
  const double mid = rk4_step(g, x, u, 0.5 * h);
  const double halves = rk4_step(g, x + 0.5 * h, mid, 0.5 * h);
  if (std::abs(whole - halves) <= 1e-13 * std::max(1.0, std::abs(halves)) || depth >= 40) return halves;
  return rk4_span(g, x + 0.5 * h, rk4_span(g, x, u, 0.5 * h, depth + 1), 0.5 * h, depth + 1);
}

// d/dx g(x, u(x)) along the solution, central where possible, one-sided inward otherwise.
double total_slope_derivative(const ReducedSlope& g, double x, double u, double du, double a, double b) {
  const double eta = 1e-5 * std::max(1.0, std::abs(x));
  auto at = [&](double dx) { return g(x + dx, u + dx * du); };
  if (x - eta >= a && x + eta <= b) {
    try {
      return (at(eta) - at(-eta)) / (2 * eta);
    } catch (const SquareRootDomain&) {
    }
  }
  const double dir = (x + 2 * eta <= b) ? 1.0 : -1.0;
  return dir * (-3 * at(0.0) + 4 * at(dir * eta) - at(dir * 2 * eta)) / (2 * eta);
}

}  // namespace

Curve solve_ivp_reduced(const VariationalProblem& problem, const ReducedSlope& slope, double x0, double u0,
                        std::size_t grid_points) {
  if (grid_points < 3) throw std::invalid_argument("need at least 3 grid points");
  const double a = problem.a;
  const double b = problem.b;
  if (x0 < a || x0 > b) throw DomainMismatch("initial abscissa outside the problem interval");
  const std::size_t n = grid_points;
  const double h = (b - a) / static_cast<double>(n - 1);
  auto node = [&](std::size_t i) { return i + 1 == n ? b : a + static_cast<double>(i) * h; };

  // Surface domain errors of the reduced slope before integrating.
  for (std::size_t i = 0; i < n; ++i) {
    slope(node(i), u0);
    if (i + 1 < n) slope(node(i) + 0.5 * h, u0);
  }

  std::vector<double> u(n);
  const double t = (x0 - a) / h;
  std::size_t below = std::min(static_cast<std::size_t>(std::floor(t)), n - 1);
  std::size_t above;
  if (std::abs(t - std::round(t)) < 1e-12) {
    below = static_cast<std::size_t>(std::round(t));
    u[below] = u0;
    above = below;
  } else {
    above = below + 1;
    u[above] = rk4_span(slope, x0, u0, node(above) - x0);
    u[below] = rk4_span(slope, x0, u0, node(below) - x0);
  }
  for (std::size_t i = above; i + 1 < n; ++i) u[i + 1] = rk4_span(slope, node(i), u[i], node(i + 1) - node(i));
  for (std::size_t i = below; i > 0; --i) u[i - 1] = rk4_span(slope, node(i), u[i], node(i - 1) - node(i));

  std::vector<double> du(n), ddu(n);
  for (std::size_t i = 0; i < n; ++i) {
    du[i] = slope(node(i), u[i]);
    ddu[i] = total_slope_derivative(slope, node(i), u[i], du[i], a, b);
  }
  return Curve::from_samples(a, b, std::move(u), std::move(du), std::move(ddu));
}

Curve solve_ivp_reduced(const CatalogEntry& entry, const VariationalProblem& problem, ConservedKind kind,
                        double constant_value, double x0, double u0, std::size_t grid_points) {
  double alpha = 0.0;
  switch (kind) {
    case ConservedKind::IgnorableU1: alpha = 1.0; break;
    case ConservedKind::IgnorableU2: alpha = 2.0; break;
    default:
      throw std::invalid_argument("no reduced first-order form for " + std::string(to_string(kind)) +
                                  " in the catalog");
  }
  if (entry.feature().depends_on_u())
    throw FlagMismatch(std::string(to_string(kind)) + " needs a feature independent of u");
  if (std::abs(problem.alpha - alpha) > kAlphaSwitch)
    throw FlagMismatch(std::string(to_string(kind)) + " holds only for alpha = " + std::to_string(alpha));
  const ReducedSlope g = [&entry, alpha, constant_value](double x, double) {
    return snell_reduced_slope(entry, alpha, constant_value, x);
  };
  return solve_ivp_reduced(problem, g, x0, u0, grid_points);
}

}  // namespace holder
