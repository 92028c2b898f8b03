#include "boolelim_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "boolelim/decide.hpp"
#include "boolelim/elim.hpp"
#include "boolelim/error.hpp"
#include "boolelim/fixtures.hpp"
#include "boolelim/random.hpp"
#include "boolelim/serialize.hpp"
#include "selftest.hpp"

namespace boolelim::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string field;
  std::string form;
  std::uint64_t seed = 1;
  std::size_t points = 64;
  std::int64_t coeff_bound = 32;
  std::string output = "text";
  std::size_t clause_limit = 4096;
  std::string input;
  std::string text;
  std::string point;
  std::string grid = "-2:2:1/4";
  std::string fixture;
  bool corrupt = false;
  std::size_t sample = 0;
};

int exit_for(Errc code) {
  switch (code) {
    case Errc::syntax_error:
    case Errc::reserved_name:
    case Errc::bad_input:
    case Errc::unexpected_variables:
    case Errc::unbound_variable:
    case Errc::division_by_zero:
      return parse_error;
    case Errc::incompatible_field:
    case Errc::order_in_c:
    case Errc::order_literal:
    case Errc::neq_literal:
    case Errc::field_mismatch:
    case Errc::wrong_kind:
    case Errc::variable_clash:
      return incompatible;
    case Errc::size_limit:
      return size_limit;
    case Errc::shape_unsupported:
      return shape_unsupported;
    default:
      return failure;
  }
}

Field field_or(const RunConfig& cfg, Field fallback) {
  return cfg.field.empty() ? fallback : parse_field(cfg.field);
}

/// Maps --form onto a construction; "ae" means AE_C over C and AE_R over R.
Shape resolve_shape(Field field, const std::string& form) {
  const std::string f = form.empty() ? (field == Field::C ? "ea" : field == Field::R ? "e" : "e3d") : form;
  auto incompatible_pair = [&]() {
    return Error(Errc::incompatible_field,
                 "form '" + f + "' is not available over " + std::string(to_string(field)));
  };
  if (f == "ea") {
    if (field != Field::C) throw incompatible_pair();
    return Shape::EA_C;
  }
  if (f == "ae") {
    if (field == Field::C) return Shape::AE_C;
    if (field == Field::R) return Shape::AE_R;
    throw incompatible_pair();
  }
  if (f == "e") {
    if (field == Field::C) throw incompatible_pair();
    return Shape::E_R;
  }
  if (f == "ed") {
    if (field != Field::R) throw incompatible_pair();
    return Shape::Ed_R;
  }
  if (f == "e3d") {
    if (field != Field::Q) throw incompatible_pair();
    return Shape::E3d_Q;
  }
  if (f == "ae3") {
    if (field != Field::Q) throw incompatible_pair();
    return Shape::AE3_Q;
  }
  throw Error(Errc::bad_input, "unknown form '" + f + "'");
}

std::string read_input(const RunConfig& cfg, std::istream& in) {
  if (cfg.input == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  if (!cfg.input.empty()) {
    std::ifstream file(cfg.input);
    if (!file) throw Error(Errc::bad_input, "cannot read '" + cfg.input + "'");
    return std::string(std::istreambuf_iterator<char>(file), {});
  }
  if (cfg.text.empty()) throw Error(Errc::bad_input, "no input: pass text or --input FILE|-");
  return cfg.text;
}

json config_json(const RunConfig& cfg, Field field, std::optional<Shape> shape) {
  json j = {{"field", std::string(to_string(field))}, {"seed", cfg.seed}, {"points", cfg.points},
            {"coeff_bound", cfg.coeff_bound}, {"clause_limit", cfg.clause_limit}};
  if (shape) j["shape"] = std::string(to_string(*shape));
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string piece;
  for (char c : text) {
    if (c == ',' || c == ';') {
      out.push_back(piece);
      piece.clear();
    } else {
      piece += c;
    }
  }
  if (!piece.empty() || !out.empty()) out.push_back(piece);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// "y=0,z=1" or "0,1" (free variables in canonical order).
Point parse_point(const std::string& text, const QuantifiedEquation& qe) {
  const auto free = variables_outside(qe.equation, qe.quantified_vars());
  const ScalarField sf = scalar_field(qe.field);
  Point x;
  std::size_t position = 0;
  for (const auto& raw : split_list(text)) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    if (const auto eq = item.find('='); eq != std::string::npos) {
      x[Var(trim(item.substr(0, eq)))] = parse_scalar(item.substr(eq + 1), sf);
    } else {
      if (position >= free.size())
        throw Error(Errc::bad_input, "more coordinates than free variables");
      x[free[position++]] = parse_scalar(item, sf);
    }
  }
  for (const auto& v : free)
    if (!x.count(v)) throw Error(Errc::bad_input, "no coordinate for free variable '" + v.name() + "'");
  return x;
}

// ---- commands ---------------------------------------------------------------

int cmd_eliminate(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const Field field = field_or(cfg, Field::C);
  const Shape shape = resolve_shape(field, cfg.form);
  const Formula phi = parse_formula(read_input(cfg, in), field);
  const QuantifiedEquation qe = eliminate(phi, field, shape, cfg.clause_limit);
  const DegreeReport report = degree_report(qe);
  if (cfg.output == "json") {
    json j = {{"config", config_json(cfg, field, shape)},
              {"formula", phi.str()},
              {"equation", json::parse(to_json(qe))},
              {"degree_report", json::parse(to_json(report))}};
    out << j.dump(2) << "\n";
  } else if (cfg.output == "latex") {
    out << to_latex(qe) << "\n";
    for (const auto& e : report.entries)
      out << "% deg_" << e.var.name() << " = " << (e.measured ? std::to_string(*e.measured) : "-inf")
          << (e.exact ? " (exactly " : " (at most ") << e.bound << ")\n";
  } else {
    out << to_text(qe) << "\n" << to_text(report);
  }
  return ok;
}

QuantifiedEquation read_equation(const RunConfig& cfg, std::istream& in, Field fallback) {
  const std::string text = read_input(cfg, in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    QuantifiedEquation qe = quantified_equation_from_json(text);
    if (!cfg.field.empty() && parse_field(cfg.field) != qe.field)
      throw Error(Errc::incompatible_field, "equation is over " + std::string(to_string(qe.field)));
    return qe;
  }
  return parse_quantified_equation(text, field_or(cfg, fallback));
}

int print_verdict(const RunConfig& cfg, const QuantifiedEquation& qe, const Verdict& v, std::ostream& out) {
  if (cfg.output == "json") {
    out << to_json(v) << "\n";
  } else if (v.kind() == Verdict::Kind::refuted) {
    out << "REFUTED " << qe.prefix.front().var.name() << " = " << v.sample().str() << "\n";
  } else {
    out << v.str() << "\n";
  }
  return v.is_definite() ? ok : unresolved;
}

int cmd_decide(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const QuantifiedEquation qe = read_equation(cfg, in, Field::C);
  const Point x = parse_point(cfg.point, qe);
  try {
    return print_verdict(cfg, qe, Verdict::from_bool(decide(qe, x)), out);
  } catch (const Error& e) {
    if (e.code() != Errc::shape_unsupported || cfg.sample == 0) throw;
  }
  SamplePlan plan;
  plan.seed = cfg.seed;
  plan.count = cfg.sample;
  plan.num_bound = cfg.coeff_bound;
  plan.den_bound = cfg.coeff_bound;
  return print_verdict(cfg, qe, refute_AE(qe, x, plan), out);
}

/// Negative control: flip the first literal of the clause matrix.
ClauseMatrix corrupt(ClauseMatrix m, Shape shape) {
  for (auto& clause : m.clauses) {
    if (clause.empty()) continue;
    Atom& a = clause.front();
    a.rel = a.rel == Rel::eq ? (uses_order_literals(shape) ? Rel::gt : Rel::neq) : Rel::eq;
    return m;
  }
  throw Error(Errc::bad_input, "formula has no literal to corrupt");
}

int cmd_verify(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const Field field = field_or(cfg, Field::C);
  const Shape shape = resolve_shape(field, cfg.form);
  const Formula phi = parse_formula(read_input(cfg, in), field);
  ClauseMatrix m = normalize_for(phi, field, shape, cfg.clause_limit);
  if (cfg.corrupt) m = corrupt(std::move(m), shape);
  const QuantifiedEquation qe = build(shape, m);
  SamplePlan plan;
  plan.seed = cfg.seed;
  plan.count = cfg.points;
  plan.num_bound = cfg.coeff_bound;
  plan.den_bound = cfg.coeff_bound;
  const EquivalenceReport report = equivalence_run(phi, qe, decider_for(shape), plan);
  if (cfg.output == "json") {
    json j = {{"config", config_json(cfg, field, shape)}, {"report", json::parse(to_json(report))}};
    out << j.dump(2) << "\n";
  } else {
    out << to_text(report);
    for (const auto& d : report.disagreements) out << to_json(d, -1) << "\n";
  }
  return report.disagreements.empty() ? ok : disagreement;
}

int cmd_report(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const Field field = field_or(cfg, Field::C);
  std::vector<Shape> shapes;
  if (!cfg.form.empty()) {
    shapes.push_back(resolve_shape(field, cfg.form));
  } else {
    for (Shape s : {Shape::EA_C, Shape::AE_C, Shape::E_R, Shape::Ed_R, Shape::AE_R, Shape::E3d_Q, Shape::AE3_Q})
      if (admits_field(s, field)) shapes.push_back(s);
  }
  const Formula phi = parse_formula(read_input(cfg, in), field);
  json reports = json::array();
  bool all = true;
  for (Shape s : shapes) {
    QuantifiedEquation qe;
    try {
      qe = eliminate(phi, field, s, cfg.clause_limit);
    } catch (const Error& e) {
      // Without --form, shapes whose literal vocabulary cannot express the formula are skipped.
      if (!cfg.form.empty() || e.code() != Errc::order_literal) throw;
      if (cfg.output == "json") {
        reports.push_back({{"shape", std::string(to_string(s))}, {"skipped", e.what()}});
      } else {
        out << "shape " << to_string(s) << ": skipped (" << e.what() << ")\n";
      }
      continue;
    }
    const DegreeReport r = degree_report(qe);
    all = all && r.satisfied;
    if (cfg.output == "json") {
      reports.push_back(json::parse(to_json(r)));
    } else {
      out << to_text(r);
    }
  }
  if (cfg.output == "json")
    out << json({{"config", config_json(cfg, field, std::nullopt)}, {"reports", reports}}).dump(2) << "\n";
  return all ? ok : failure;
}

int cmd_plot(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  QuantifiedEquation qe;
  if (cfg.fixture == "pecker") {
    qe = pecker_simplified();
  } else if (cfg.fixture == "pecker-raw") {
    qe = pecker_unsimplified();
  } else if (!cfg.fixture.empty()) {
    throw Error(Errc::bad_input, "unknown fixture '" + cfg.fixture + "'");
  } else {
    qe = read_equation(cfg, in, Field::R);
  }
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream ss(cfg.grid);
    std::string item;
    while (std::getline(ss, item, ':')) p.push_back(item);
    if (p.size() != 3) throw Error(Errc::bad_input, "grid must be LO:HI:STEP");
    return p;
  }();
  const auto free = variables_outside(qe.equation, qe.quantified_vars());
  if (free.size() != 2) throw Error(Errc::shape_unsupported, "plots need exactly two free variables");
  const auto samples = sweep_grid(qe, free[0], free[1], Rational::parse(trim(parts[0])),
                                  Rational::parse(trim(parts[1])), Rational::parse(trim(parts[2])));
  out << free[0].name() << "," << free[1].name() << ",has_real_root\n";
  for (const auto& s : samples) out << s.y.str() << "," << s.z.str() << "," << (s.has_real_root ? 1 : 0) << "\n";
  return ok;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_selftest(cfg.seed);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.passed) {
      out << "PASS " << r.name << "\n";
    } else {
      ++failed;
      out << "FAIL " << r.name << ": " << r.detail << "\n";
    }
  }
  out << (results.size() - failed) << "/" << results.size() << " checks passed (seed " << cfg.seed << ")\n";
  return failed == 0 ? ok : failure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean elimination: quantified single-equation normal forms over C, R and Q"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool formula_input) {
    sub->add_option("text", cfg.text, formula_input ? "Formula text" : "Equation text or JSON");
    sub->add_option("--input", cfg.input, "Read input from FILE, or - for stdin");
    sub->add_option("--field", cfg.field, "Scalar field")->check(CLI::IsMember({"c", "r", "q", "C", "R", "Q"}));
    sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "latex", "text"}));
    sub->add_option("--seed", cfg.seed, "Seed for sampled points");
  };
  auto form_option = [&](CLI::App* sub) {
    sub->add_option("--form", cfg.form, "Normal form")
        ->check(CLI::IsMember({"ea", "ae", "e", "ed", "e3d", "ae3"}));
    sub->add_option("--limit", cfg.clause_limit, "Clause cap for normal-form distribution");
  };

  auto* eliminate_cmd = app.add_subcommand("eliminate", "Compile a formula into a quantified equation");
  common(eliminate_cmd, true);
  form_option(eliminate_cmd);

  auto* decide_cmd = app.add_subcommand("decide", "Decide a quantified equation at a point");
  common(decide_cmd, false);
  decide_cmd->add_option("--point", cfg.point, "Coordinates, e.g. y=0,z=1 or 0,1");
  decide_cmd->add_option("--sample", cfg.sample, "Fall back to N sampled universal values when no decider applies");
  decide_cmd->add_option("--coeff-bound", cfg.coeff_bound, "Numerator/denominator bound for samples");

  auto* verify_cmd = app.add_subcommand("verify", "Compare a formula with its construction at sampled points");
  common(verify_cmd, true);
  form_option(verify_cmd);
  verify_cmd->add_option("--points", cfg.points, "Number of sampled points");
  verify_cmd->add_option("--coeff-bound", cfg.coeff_bound, "Numerator/denominator bound for points");
  verify_cmd->add_flag("--corrupt", cfg.corrupt, "Flip one literal before building (negative control)");

  auto* report_cmd = app.add_subcommand("report", "Degree reports for the constructions of a formula");
  common(report_cmd, true);
  form_option(report_cmd);

  auto* selftest_cmd = app.add_subcommand("selftest", "Run fixtures and reduced property suites");
  selftest_cmd->add_option("--seed", cfg.seed, "Seed for the property suites");

  auto* plot_cmd = app.add_subcommand("plot", "CSV of grid points where an exists-r equation has a real root");
  common(plot_cmd, false);
  plot_cmd->add_option("--grid", cfg.grid, "LO:HI:STEP for both free variables");
  plot_cmd->add_option("--fixture", cfg.fixture, "Built-in equation: pecker or pecker-raw");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }

  try {
    if (*eliminate_cmd) return cmd_eliminate(cfg, in, out);
    if (*decide_cmd) return cmd_decide(cfg, in, out);
    if (*verify_cmd) return cmd_verify(cfg, in, out);
    if (*report_cmd) return cmd_report(cfg, in, out);
    if (*selftest_cmd) return cmd_selftest(cfg, out);
    if (*plot_cmd) return cmd_plot(cfg, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return failure;
}

}  // namespace boolelim::cli
