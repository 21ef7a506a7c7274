#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace holder::cli {

using nlohmann::json;

// -- formatting -------------------------------------------------------------

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw SpecError("not a number: '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

// -- problem files ----------------------------------------------------------

namespace {

std::string line_position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_field(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw SpecError("'" + key + "' must be a number");
  return v.get<double>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw SpecError("unknown key '" + key + "' in " + std::string(where));
}

}  // namespace

ProblemSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecError("problem file is not valid JSON at " + line_position(text, e.byte == 0 ? 0 : e.byte - 1) +
                    ": " + e.what());
  }
  if (!doc.is_object()) throw SpecError("problem file must hold a JSON object");
  reject_unknown(doc, {"problem", "hook", "a", "b", "ua", "ub", "alpha", "params", "solver"}, "problem file");
  for (const char* key : {"problem", "a", "b", "ua", "ub"})
    if (!doc.contains(key)) throw SpecError(std::string("missing key '") + key + "'");

  ProblemSpec spec;
  if (!doc["problem"].is_string()) throw SpecError("'problem' must be a string");
  spec.problem = doc["problem"].get<std::string>();
  if (doc.contains("hook")) {
    if (!doc["hook"].is_string()) throw SpecError("'hook' must be a string");
    spec.hook = doc["hook"].get<std::string>();
  }
  spec.a = number_field(doc, "a");
  spec.b = number_field(doc, "b");
  spec.ua = number_field(doc, "ua");
  spec.ub = number_field(doc, "ub");
  if (doc.contains("alpha")) spec.alpha = number_field(doc, "alpha");
  if (!(spec.b > spec.a)) throw SpecError("need a < b");

  if (doc.contains("params")) {
    const json& params = doc["params"];
    if (!params.is_object()) throw SpecError("'params' must be an object");
    for (const auto& [key, v] : params.items()) {
      if (!v.is_number()) throw SpecError("param '" + key + "' must be a number");
      spec.params[key] = v.get<double>();
    }
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) throw SpecError("'solver' must be an object");
    reject_unknown(s,
                   {"grid_points", "max_newton_iters", "residual_tol", "min_damping", "u_floor", "sag_fallback",
                    "num_variations"},
                   "solver block");
    auto integer = [&](const char* key) {
      if (!s[key].is_number_integer() || s[key].get<long long>() <= 0)
        throw SpecError(std::string("'") + key + "' must be a positive integer");
      return s[key].get<long long>();
    };
    if (s.contains("grid_points")) spec.solver.grid_points = static_cast<std::size_t>(integer("grid_points"));
    if (s.contains("max_newton_iters")) spec.solver.max_newton_iters = static_cast<int>(integer("max_newton_iters"));
    if (s.contains("num_variations")) spec.solver.classify.num_variations = static_cast<int>(integer("num_variations"));
    if (s.contains("residual_tol")) spec.solver.residual_tol = number_field(s, "residual_tol");
    if (s.contains("min_damping")) spec.solver.min_damping = number_field(s, "min_damping");
    if (s.contains("u_floor")) spec.solver.u_floor = number_field(s, "u_floor");
    if (s.contains("sag_fallback")) {
      if (!s["sag_fallback"].is_boolean()) throw SpecError("'sag_fallback' must be a boolean");
      spec.solver.sag_fallback = s["sag_fallback"].get<bool>();
    }
    try {
      spec.solver.validate();
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
  }
  spec.sha256 = sha256_hex(text);
  return spec;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

CatalogEntry make_entry(const ProblemSpec& spec) {
  const auto name = catalog_name_from_string(spec.problem);
  if (!name) throw SpecError("unknown problem '" + spec.problem + "'");
  auto param = [&](const char* key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
  };
  switch (*name) {
    case CatalogName::Arclength: return arclength_entry();
    case CatalogName::Brachistochrone: return brachistochrone_entry();
    case CatalogName::SnellLinear: return snell_linear_entry();
    case CatalogName::SnellLogistic: {
      const LogisticSpeed ls{param("beta", 2.0), param("x0", 5.0)};
      if (!(ls.beta > 0)) throw SpecError("'beta' must be positive");
      return snell_logistic_entry(ls);
    }
    case CatalogName::Custom:
      try {
        return custom_entry(spec.hook);
      } catch (const std::out_of_range& e) {
        throw SpecError(e.what());
      }
  }
  throw SpecError("unknown problem '" + spec.problem + "'");
}

VariationalProblem make_problem(const ProblemSpec& spec, const CatalogEntry& entry) {
  return VariationalProblem(entry.feature(), spec.a, spec.b, spec.ua, spec.ub, spec.alpha);
}

Curve make_curve(const ProblemSpec& spec, const CatalogEntry& entry, double alpha, std::string_view which) {
  if (which.empty() || which == "chord") return Curve::chord(spec.a, spec.b, spec.ua, spec.ub);
  if (which.starts_with("line:")) {
    const auto v = parse_double_list(which.substr(5));
    if (v.size() != 2) throw SpecError("--curve line:S,D needs a slope and an intercept");
    return Curve::line(spec.a, spec.b, v[0], v[1]);
  }
  try {
    const ClosedForm& form = entry.closed_form(which);
    if (!form.admits(alpha))
      throw SpecError("closed form '" + std::string(which) + "' requires " + form.alpha_condition);
    return form.build(spec.a, spec.b, alpha, spec.params);
  } catch (const std::out_of_range& e) {
    throw SpecError(e.what());
  }
}

// -- commands ---------------------------------------------------------------

namespace {

struct Loaded {
  ProblemSpec spec;
  CatalogEntry entry;
  VariationalProblem problem;
};

Loaded load(const CommonArgs& args) {
  if (args.spec_path.empty()) throw SpecError("--spec is required");
  ProblemSpec spec = load_spec(args.spec_path);
  if (args.alpha) spec.alpha = *args.alpha;
  if (args.grid) {
    spec.solver.grid_points = *args.grid;
    try {
      spec.solver.validate();
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
  }
  spec.solver.classify.seed = args.seed;
  CatalogEntry entry = make_entry(spec);
  VariationalProblem problem = make_problem(spec, entry);
  return {std::move(spec), std::move(entry), std::move(problem)};
}

QuadratureOptions quadrature_for(const CommonArgs& args) {
  QuadratureOptions q;
  if (args.grid) q.nodes = *args.grid;
  return q;
}

void check_format(const CommonArgs& args) {
  if (args.format != "csv" && args.format != "json") throw SpecError("--format must be csv or json");
}

/// Runs `body`, mapping library errors onto exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const SolverDiverged& e) {
    err << "solver diverged: " << e.what() << '\n';
    return kSolverDiverged;
  } catch (const DomainMismatch& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kEvaluationError;
  } catch (const Error& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kEvaluationError;
  } catch (const std::invalid_argument& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kEvaluationError;
  }
}

json classification_json(const Classification& c) {
  return {{"verdict", to_string(c.verdict)},
          {"num_variations", c.num_variations},
          {"tolerance", c.tolerance},
          {"sample_values", c.sample_values}};
}

json config_json(const SolverConfig& s) {
  return {{"grid_points", s.grid_points},   {"max_newton_iters", s.max_newton_iters},
          {"residual_tol", s.residual_tol}, {"min_damping", s.min_damping},
          {"u_floor", s.u_floor},           {"sag_fallback", s.sag_fallback},
          {"num_variations", s.classify.num_variations}};
}

json report_json(const Loaded& l, double alpha, const SolveReport& r) {
  return {{"problem", l.spec.problem},
          {"alpha", alpha},
          {"a", l.problem.a},
          {"b", l.problem.b},
          {"ua", r.ua},
          {"ub", r.ub},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"final_residual_rms", r.final_residual_rms},
          {"classification", r.converged ? classification_json(r.classification) : json(nullptr)},
          {"provenance",
           {{"spec_sha256", l.spec.sha256}, {"seed", l.spec.solver.classify.seed}, {"config", config_json(l.spec.solver)}}}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot write '" + path + "'");
  f << content;
}

}  // namespace

int cmd_eval(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(args);
    const Loaded l = load(args);
    std::vector<double> alphas = args.alphas;
    if (alphas.empty()) alphas.push_back(l.problem.alpha);
    const Curve curve = make_curve(l.spec, l.entry, l.problem.alpha, args.curve);
    std::vector<double> values;
    for (double alpha : alphas)
      values.push_back(evaluate_centrality(l.problem.with_alpha(alpha), curve, quadrature_for(args)));
    if (args.format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i < alphas.size(); ++i) rows.push_back({{"alpha", alphas[i]}, {"C_alpha", values[i]}});
      out << rows.dump(2) << '\n';
    } else {
      out << "alpha,C_alpha\n";
      for (std::size_t i = 0; i < alphas.size(); ++i)
        out << format_double(alphas[i]) << ',' << format_double(values[i]) << '\n';
    }
    return int(kOk);
  });
}

int cmd_solve(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(args);
    const Loaded l = load(args);
    std::vector<double> alphas = args.alphas;
    if (alphas.empty()) alphas.push_back(l.problem.alpha);

    // Continuation over alpha: each solve starts from the previous solution.
    std::vector<SolveReport> reports;
    bool diverged = false;
    std::optional<Curve> guess;
    for (double alpha : alphas) {
      const VariationalProblem p = l.problem.with_alpha(alpha);
      SolveReport report{Curve::chord(p.a, p.b, p.ua, p.ub), 0.0, 0, false, {}, p.ua, p.ub};
      try {
        try {
          report = solve_bvp(p, l.spec.solver, guess);
        } catch (const SolverDiverged&) {
          if (!guess) throw;
          report = solve_bvp(p, l.spec.solver);
        }
        guess = report.curve;
      } catch (const SolverDiverged& e) {
        err << "solver diverged at alpha = " << format_double(alpha) << ": " << e.what() << '\n';
        report = e.best();
        diverged = true;
      }
      reports.push_back(std::move(report));
    }

    json doc;
    if (reports.size() == 1) {
      doc = report_json(l, alphas[0], reports[0]);
    } else {
      doc = json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) doc.push_back(report_json(l, alphas[i], reports[i]));
    }
    std::ostringstream csv;
    csv << 'x';
    if (reports.size() == 1) {
      csv << ",u";
    } else {
      for (double alpha : alphas) csv << ",u_alpha_" << format_double(alpha);
    }
    csv << '\n';
    const Curve& first = reports[0].curve;
    for (std::size_t i = 0; i < first.size(); ++i) {
      csv << format_double(first.node(i));
      for (const auto& r : reports) csv << ',' << format_double(r.curve.values()[i]);
      csv << '\n';
    }

    if (!args.out_path.empty()) {
      write_file(args.out_path + ".json", doc.dump(2) + "\n");
      write_file(args.out_path + ".csv", csv.str());
    } else if (args.format == "json") {
      out << doc.dump(2) << '\n';
    } else {
      out << csv.str();
    }
    return int(diverged ? kSolverDiverged : kOk);
  });
}

int cmd_classify(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(args);
    const Loaded l = load(args);
    ClassifyOptions opts = l.spec.solver.classify;
    opts.second_variation.quadrature = quadrature_for(args);
    std::vector<double> alphas = args.alphas;
    if (alphas.empty()) alphas.push_back(l.problem.alpha);
    json docs = json::array();
    std::ostringstream csv;
    csv << "alpha,verdict,num_variations,min_value,max_value,tolerance\n";
    for (double alpha : alphas) {
      const VariationalProblem p = l.problem.with_alpha(alpha);
      const Curve curve = make_curve(l.spec, l.entry, alpha, args.curve);
      const Classification c = classify(p, curve, opts);
      json doc = classification_json(c);
      doc["alpha"] = alpha;
      doc["seed"] = opts.seed;
      docs.push_back(std::move(doc));
      const auto [lo, hi] = std::minmax_element(c.sample_values.begin(), c.sample_values.end());
      csv << format_double(alpha) << ',' << to_string(c.verdict) << ',' << c.num_variations << ','
          << format_double(*lo) << ',' << format_double(*hi) << ',' << format_double(c.tolerance) << '\n';
    }
    if (args.format == "json")
      out << (docs.size() == 1 ? docs[0] : docs).dump(2) << '\n';
    else
      out << csv.str();
    return int(kOk);
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(args.common);
    if (args.fig1) {
      // Lines through P = (1, 2) on the slope-constrained branch.
      out << "alpha,slope_magnitude,slope_negative,slope_positive,intercept_negative,intercept_positive\n";
      for (double alpha : kBundleAlphas) {
        const double s = 1.0 / std::sqrt(1.0 - alpha);
        out << format_double(alpha) << ',' << format_double(s) << ',' << format_double(-s) << ','
            << format_double(s) << ',' << format_double(2.0 + s) << ',' << format_double(2.0 - s) << '\n';
      }
      return int(kOk);
    }
    if (args.steps < 2) throw SpecError("--steps must be >= 2");
    if (!(args.alpha_max > args.alpha_min)) throw SpecError("--alpha-max must exceed --alpha-min");
    const Loaded l = load(args.common);
    const Curve curve = make_curve(l.spec, l.entry, l.problem.alpha, args.common.curve);
    std::vector<double> alphas(static_cast<std::size_t>(args.steps));
    for (int i = 0; i < args.steps; ++i)
      alphas[static_cast<std::size_t>(i)] =
          args.alpha_min + (args.alpha_max - args.alpha_min) * i / static_cast<double>(args.steps - 1);
    alphas.back() = args.alpha_max;
    const auto sweep = centrality_alpha_sweep(l.problem, curve, alphas, quadrature_for(args.common));
    out << "alpha,C_alpha,constrained_slope,monotone\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const auto [alpha, value] = sweep[i];
      out << format_double(alpha) << ',' << format_double(value) << ',';
      if (alpha < 1.0) out << format_double(1.0 / std::sqrt(1.0 - alpha));
      const bool monotone = i == 0 || value > sweep[i - 1].second;
      out << ',' << (monotone ? "true" : "false") << '\n';
    }
    return int(kOk);
  });
}

int cmd_table1(const CommonArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(args);
    bool all_match = true;
    ClassifyOptions opts;
    opts.seed = args.seed;
    json rows = json::array();
    json documented = json::array();
    std::ostringstream csv;
    csv << "alpha,branch,slope,expected,computed,match\n";
    for (const auto& entry : table1_matrix()) {
      if (!entry.test_case) {
        documented.push_back({{"alpha_range", entry.row.alpha_range},
                              {"branch", to_string(entry.row.branch)},
                              {"feature_value", entry.row.feature_value},
                              {"condition", entry.row.slope_condition},
                              {"status", "documented, not executed (complex space)"}});
        continue;
      }
      const Table1Case& c = *entry.test_case;
      const Classification result = classify(table1_problem(c), table1_curve(c), opts);
      const bool match = result.verdict == c.expected;
      all_match = all_match && match;
      csv << format_double(c.alpha) << ',' << to_string(c.branch) << ',' << format_double(c.slope) << ','
          << to_string(c.expected) << ',' << to_string(result.verdict) << ',' << (match ? "true" : "false") << '\n';
      rows.push_back({{"alpha", c.alpha},
                      {"branch", to_string(c.branch)},
                      {"slope", c.slope},
                      {"expected", to_string(c.expected)},
                      {"computed", to_string(result.verdict)},
                      {"match", match}});
    }
    if (args.format == "json")
      out << json{{"rows", rows}, {"documented_rows", documented}}.dump(2) << '\n';
    else
      out << csv.str();
    if (!all_match) err << "table mismatch: at least one computed verdict differs from the expected one\n";
    return int(all_match ? kOk : kTableMismatch);
  });
}

// -- argv -------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hoelder functional centrality: evaluate, solve and classify stationary curves"};
  app.require_subcommand(1);

  CommonArgs common;
  SweepArgs sweep;
  std::string alphas_text;
  double alpha = 0.0;
  std::size_t grid = 0;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    auto* spec = sub->add_option("--spec", common.spec_path, "problem file (JSON)");
    if (needs_spec) spec->required();
    sub->add_option("--alpha", alpha, "override the exponent alpha");
    sub->add_option("--alphas", alphas_text, "comma-separated list of alphas");
    sub->add_option("--curve", common.curve, "chord | line:S,D | closed-form id");
    sub->add_option("--out", common.out_path, "output path prefix");
    sub->add_option("--seed", common.seed, "variation sampling seed");
    sub->add_option("--grid", grid, "grid points / quadrature nodes (odd)");
    sub->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* eval = app.add_subcommand("eval", "evaluate C_alpha along a curve");
  add_common(eval, true);
  auto* solve = app.add_subcommand("solve", "solve the boundary value problem");
  add_common(solve, true);
  auto* cls = app.add_subcommand("classify", "second-variation classification of a curve");
  add_common(cls, true);
  auto* sw = app.add_subcommand("sweep", "C_alpha over a range of alphas");
  add_common(sw, false);
  sw->add_option("--alpha-min", sweep.alpha_min);
  sw->add_option("--alpha-max", sweep.alpha_max);
  sw->add_option("--steps", sweep.steps);
  sw->add_flag("--fig1", sweep.fig1, "emit the slope-constrained line bundle through (1, 2)");
  auto* table = app.add_subcommand("table1", "reproduce the shortest-path classification table");
  table->add_option("--seed", common.seed, "variation sampling seed");
  table->add_option("--format", common.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kSpecError;
  }

  for (auto* sub : {eval, solve, cls, sw})
    if (sub->parsed() && sub->count("--alpha") > 0) common.alpha = alpha;
  for (auto* sub : {eval, solve, cls, sw})
    if (sub->parsed() && sub->count("--grid") > 0) common.grid = grid;
  if (!alphas_text.empty()) {
    try {
      common.alphas = parse_double_list(alphas_text);
    } catch (const SpecError& e) {
      err << "spec error: " << e.what() << '\n';
      return kSpecError;
    }
  }

  if (eval->parsed()) return cmd_eval(common, out, err);
  if (solve->parsed()) return cmd_solve(common, out, err);
  if (cls->parsed()) return cmd_classify(common, out, err);
  if (sw->parsed()) {
    sweep.common = common;
    return cmd_sweep(sweep, out, err);
  }
  return cmd_table1(common, out, err);
}

}  // namespace holder::cli
