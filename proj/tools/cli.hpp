#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holder/bvp.hpp"
#include "holder/problems.hpp"

namespace holder::cli {

enum ExitCode : int {
  kOk = 0,
  kSpecError = 2,
  kEvaluationError = 3,
  kSolverDiverged = 4,
  kTableMismatch = 5,
};

/// Malformed or inconsistent problem file (or command line).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Parsed problem file.
struct ProblemSpec {
  std::string problem;
  std::string hook;
  double a = 0.0;
  double b = 1.0;
  double ua = 0.0;
  double ub = 0.0;
  double alpha = 1.0;
  CurveParams params;
  SolverConfig solver;
  /// SHA-256 of the raw file bytes, lowercase hex.
  std::string sha256;
};

ProblemSpec parse_spec(std::string_view text);
ProblemSpec load_spec(const std::string& path);

CatalogEntry make_entry(const ProblemSpec& spec);
VariationalProblem make_problem(const ProblemSpec& spec, const CatalogEntry& entry);

/// "chord", "line:S,D", or a closed-form id of the catalog entry (constants from spec params).
Curve make_curve(const ProblemSpec& spec, const CatalogEntry& entry, double alpha, std::string_view which);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
/// Comma-separated list of doubles.
std::vector<double> parse_double_list(std::string_view text);

std::string sha256_hex(std::string_view bytes);

struct CommonArgs {
  std::string spec_path;
  std::optional<double> alpha;
  std::vector<double> alphas;
  std::string curve = "chord";
  std::string out_path;
  std::uint64_t seed = 1;
  std::optional<std::size_t> grid;
  std::string format = "csv";
};

struct SweepArgs {
  CommonArgs common;
  double alpha_min = -1.0;
  double alpha_max = 1.0;
  int steps = 11;
  bool fig1 = false;
};

int cmd_eval(const CommonArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const CommonArgs& args, std::ostream& out, std::ostream& err);
int cmd_classify(const CommonArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_table1(const CommonArgs& args, std::ostream& out, std::ostream& err);

/// Line-bundle alphas for which lines through (1, 2) with slopes -/+ 1/sqrt(1 - alpha) are emitted.
inline constexpr double kBundleAlphas[] = {0.1, 0.3, 0.5, 0.9, 0.95};

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holder::cli
