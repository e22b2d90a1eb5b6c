#include "cli.hpp"

#include "hqc/calculus.hpp"
#include "hqc/checks.hpp"
#include "hqc/errors.hpp"
#include "hqc/oracle.hpp"
#include "hqc/report.hpp"
#include "hqc/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace hqc::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kParseError;
  if (dynamic_cast<const IoError*>(&e)) return kIoError;
  return kValidationError;
}

// Message plus, for positioned errors on a single-line input, a caret line.
std::string describe_error(const std::exception& e, const std::string& input) {
  std::ostringstream os;
  std::size_t position = std::string::npos;
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    os << "parse error: " << pe->message() << " at position " << pe->position() << " (expected "
       << pe->expected() << ")";
    position = pe->position();
  } else if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) {
    os << "validation error: " << ve->what();
    if (ve->has_position()) {
      os << " at position " << ve->position();
      position = ve->position();
    }
  } else if (dynamic_cast<const IoError*>(&e)) {
    os << "I/O error: " << e.what();
  } else {
    os << "error: " << e.what();
  }
  if (position != std::string::npos && !input.empty() && input.find('\n') == std::string::npos &&
      position <= input.size()) {
    os << "\n  " << input << "\n  " << std::string(position, ' ') << "^";
  }
  return os.str();
}

BracketKind require_kind(const std::string& name, bool dynamical) {
  const auto kind = parse_bracket_kind(name);
  if (!kind || (dynamical && *kind == BracketKind::Poisson)) {
    throw ValidationError("unknown bracket kind '" + name + "'" +
                          (dynamical ? " (expected anderson, aleksandrov or commutator)" : ""));
  }
  return *kind;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

// Splits on whitespace outside parentheses.
std::vector<std::string> split_args(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth <= 0 && std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += c;
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

// Recomputes a check's defect through the rewrite-free reference route.
HybridExpr reference_defect(const CheckSpec& spec, const HybridExpr& h) {
  using namespace oracle;
  const Coefficient minus_one(-1);
  auto raw_sub = [&](const HybridExpr& a, const HybridExpr& b) { return raw_add(a, raw_scale(minus_one, b)); };
  switch (spec.kind) {
    case CheckKind::Conservation: {
      HybridExpr rate = spec.find_arg("rate") ? *spec.find_arg("rate") : HybridExpr::zero(h.table());
      return raw_sub(reference_eom(spec.bracket, spec.arg("observable"), h), rate);
    }
    case CheckKind::HermiticityOfEom: {
      HybridExpr e = reference_eom(spec.bracket, spec.arg("observable"), h);
      return raw_sub(e, reference_dagger(e));
    }
    case CheckKind::Leibniz: {
      auto one = [&](const HybridExpr& a, const HybridExpr& b) {
        return raw_sub(reference_eom(spec.bracket, raw_mul(a, b), h),
                       raw_add(raw_mul(reference_eom(spec.bracket, a, h), b),
                               raw_mul(a, reference_eom(spec.bracket, b, h))));
      };
      const HybridExpr& a = spec.arg("a");
      const HybridExpr& b = spec.arg("b");
      return spec.symmetrize ? raw_add(one(a, b), one(b, a)) : one(a, b);
    }
    case CheckKind::Antisymmetry: {
      const HybridExpr& a = spec.arg("a");
      const HybridExpr& b = spec.arg("b");
      return raw_add(reference_bracket(spec.bracket, a, b), reference_bracket(spec.bracket, b, a));
    }
  }
  throw ValidationError("unknown check kind");
}

// Prints the oracle verdict; returns false on disagreement.
bool oracle_line(std::ostream& out, const HybridExpr& reference, const HybridExpr& result) {
  const bool agree = oracle::oracle_equal(reference, result);
  out << "oracle: " << (agree ? "agree" : "DISAGREE") << "\n";
  return agree;
}

struct Options {
  unsigned modes = 1;
  unsigned dofs = 1;
  std::vector<std::string> funcs;
  bool oracle = false;
  std::string out_path;
  bool assert_mode = false;
  unsigned long long seed = 0;
};

TablePtr table_from(const Options& o) {
  std::vector<FunctionSymbol> functions;
  if (o.funcs.empty()) {
    functions.push_back({"V", true});
  } else {
    for (const auto& name : o.funcs) functions.push_back({name, true});
  }
  return make_table(o.modes, o.dofs, std::move(functions));
}

int cmd_run(const Options& o, const std::string& path, std::ostream& out) {
  const Scenario scenario = parse_scenario(read_file(path));
  const std::string name =
      scenario.name.empty() ? std::filesystem::path(path).stem().string() : scenario.name;
  const std::vector<CheckReport> reports = run_checks(scenario);

  out << report_to_text(name, scenario, reports);
  if (!o.out_path.empty()) write_file(o.out_path, report_to_json(name, scenario, reports).dump(2) + "\n");

  bool oracle_ok = true;
  if (o.oracle) {
    std::size_t agree = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const HybridExpr h = scenario.hamiltonian ? *scenario.hamiltonian : HybridExpr::zero(scenario.table);
      if (oracle::oracle_equal(reference_defect(scenario.checks[i], h), reports[i].defect)) ++agree;
    }
    oracle_ok = agree == reports.size();
    out << "oracle: " << agree << "/" << reports.size() << " defects agree\n";
  }

  if (!oracle_ok) return kAssertionFailed;
  if (o.assert_mode) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!meets_expectation(scenario.checks[i], reports[i])) return kAssertionFailed;
    }
  }
  return kOk;
}

}  // namespace

Repl::Repl(TablePtr table, bool oracle, std::ostream& out)
    : table_(std::move(table)), oracle_(oracle), out_(out) {}

HybridExpr Repl::expr(const std::string& text) const { return parse(text, table_, env_); }

void Repl::eval_line(const std::string& line) {
  const HybridExpr value = expr(line);
  out_ << pretty(value) << "\n";
  if (oracle_) oracle_line(out_, parse_raw(line, table_, env_), value);
}

void Repl::command(const std::string& line) {
  std::istringstream is(line);
  std::string cmd;
  is >> cmd;
  std::string rest;
  std::getline(is, rest);
  const auto args = split_args(rest);
  auto need = [&](std::size_t n, const char* usage) {
    if (args.size() != n) throw ValidationError(std::string("usage: ") + usage);
  };

  if (cmd == ":let") {
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw ValidationError("usage: :let NAME = EXPR");
    std::string name = rest.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    bool identifier = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) identifier = identifier && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!identifier || is_reserved_name(name) || table_->find_function(name)) {
      throw ValidationError("cannot bind '" + name + "'");
    }
    HybridExpr value = expr(rest.substr(eq + 1));
    out_ << name << " = " << pretty(value) << "\n";
    env_.insert_or_assign(name, std::move(value));
  } else if (cmd == ":bracket") {
    need(3, ":bracket KIND A B");
    const BracketKind kind = require_kind(args[0], false);
    const HybridExpr a = expr(args[1]);
    const HybridExpr b = expr(args[2]);
    const HybridExpr result = bracket(kind, a, b);
    out_ << pretty(result) << "\n";
    if (oracle_) oracle_line(out_, oracle::reference_bracket(kind, a, b), result);
  } else if (cmd == ":eom") {
    need(3, ":eom KIND H A");
    const BracketKind kind = require_kind(args[0], true);
    const HybridExpr h = expr(args[1]);
    const HybridExpr a = expr(args[2]);
    const HybridExpr result = eom(kind, a, h);
    out_ << pretty(result) << "\n";
    if (oracle_) oracle_line(out_, oracle::reference_eom(kind, a, h), result);
  } else if (cmd == ":check") {
    if (args.empty()) throw ValidationError("usage: :check KIND BRACKET ...");
    const auto kind = parse_check_kind(args[0]);
    if (!kind) throw ValidationError("unknown check kind '" + args[0] + "'");
    CheckSpec spec;
    spec.kind = *kind;
    HybridExpr h = HybridExpr::zero(table_);
    switch (*kind) {
      case CheckKind::Antisymmetry:
        need(4, ":check antisymmetry BRACKET A B");
        spec.bracket = require_kind(args[1], false);
        spec.args = {{"a", expr(args[2])}, {"b", expr(args[3])}};
        break;
      case CheckKind::Leibniz:
        need(5, ":check leibniz BRACKET H A B");
        spec.bracket = require_kind(args[1], true);
        h = expr(args[2]);
        spec.args = {{"a", expr(args[3])}, {"b", expr(args[4])}};
        break;
      case CheckKind::HermiticityOfEom:
      case CheckKind::Conservation:
        need(4, ":check conservation|hermiticity_of_eom BRACKET H A");
        spec.bracket = require_kind(args[1], true);
        h = expr(args[2]);
        spec.args = {{"observable", expr(args[3])}};
        break;
    }
    const CheckReport report = run_check(spec, h);
    out_ << (report.passed ? "PASS" : "FAIL") << " defect: " << pretty(report.defect) << "\n";
    if (oracle_) oracle_line(out_, reference_defect(spec, h), report.defect);
  } else if (cmd == ":help") {
    out_ << "expressions are evaluated and printed canonically\n"
            ":let NAME = EXPR\n"
            ":bracket KIND A B\n"
            ":eom KIND H A\n"
            ":check antisymmetry BRACKET A B\n"
            ":check leibniz BRACKET H A B\n"
            ":check conservation BRACKET H A\n"
            ":check hermiticity_of_eom BRACKET H A\n"
            ":quit\n"
            "arguments are separated by spaces; parenthesize expressions containing spaces\n";
  } else {
    throw ValidationError("unknown command '" + cmd + "' (try :help)");
  }
}

bool Repl::handle(const std::string& raw_line) {
  std::string line = raw_line;
  line.erase(0, line.find_first_not_of(" \t\r"));
  line.erase(line.find_last_not_of(" \t\r") + 1);
  if (line.empty() || line[0] == '#') return true;
  if (line == ":quit" || line == ":q") return false;
  try {
    if (line[0] == ':') {
      command(line);
    } else {
      eval_line(line);
    }
  } catch (const std::exception& e) {
    out_ << describe_error(e, line[0] == ':' ? std::string() : line) << "\n";
  }
  return true;
}

int Repl::loop(std::istream& in, bool interactive) {
  std::string line;
  while (true) {
    if (interactive) out_ << "hqc> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!handle(line)) break;
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic calculator for hybrid quantum-classical brackets", "hqc"};
  Options o;
  app.add_option("--modes", o.modes, "Number of quantum modes (q1, p1, ...)")->check(CLI::PositiveNumber);
  app.add_option("--dofs", o.dofs, "Number of classical degrees of freedom (x1, k1, ...)")
      ->check(CLI::PositiveNumber);
  app.add_option("--func", o.funcs, "Declare a real function symbol (repeatable; default V)");
  app.add_flag("--oracle", o.oracle, "Double-check results with the differential-operator oracle");
  app.add_option("--out", o.out_path, "Write the JSON report of `run` to this path");
  app.add_flag("--assert", o.assert_mode, "Exit 1 when a check contradicts its expect annotation");
  app.add_option("--seed", o.seed, "Seed for randomized runs (every command is deterministic)");
  app.require_subcommand(1);

  std::string canon_text;
  auto* canon = app.add_subcommand("canon", "Print the canonical form of an expression");
  canon->add_option("expr", canon_text, "Expression")->required();

  std::string kind_name, a_text, b_text, ham_text;
  auto* br = app.add_subcommand("bracket", "Evaluate a bracket of two expressions");
  br->add_option("--kind", kind_name, "commutator | poisson | anderson | aleksandrov")->required();
  br->add_option("a", a_text)->required();
  br->add_option("b", b_text)->required();

  auto* eom_cmd = app.add_subcommand("eom", "Time derivative of an observable");
  eom_cmd->add_option("--kind", kind_name, "anderson | aleksandrov | commutator")->required();
  eom_cmd->add_option("--ham", ham_text, "Hamiltonian")->required();
  eom_cmd->add_option("observable", a_text)->required();

  std::string scenario_path;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  auto* repl = app.add_subcommand("repl", "Interactive session");

  for (auto* sub : {canon, br, eom_cmd, run_cmd, repl}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kParseError;
  }

  std::string current_input;
  try {
    if (repl->parsed()) {
      Repl session(table_from(o), o.oracle, out);
      return session.loop(in, ::isatty(STDIN_FILENO) != 0 && &in == &std::cin);
    }
    if (run_cmd->parsed()) return cmd_run(o, scenario_path, out);

    const TablePtr table = table_from(o);
    auto parse_input = [&](const std::string& text) {
      current_input = text;
      HybridExpr e = parse(text, table);
      current_input.clear();
      return e;
    };

    if (canon->parsed()) {
      const HybridExpr e = parse_input(canon_text);
      out << pretty(e) << "\n";
      if (o.oracle && !oracle_line(out, parse_raw(canon_text, table), e)) return kAssertionFailed;
      return kOk;
    }
    if (br->parsed()) {
      const BracketKind kind = require_kind(kind_name, false);
      const HybridExpr a = parse_input(a_text);
      const HybridExpr b = parse_input(b_text);
      const HybridExpr result = bracket(kind, a, b);
      out << pretty(result) << "\n";
      if (o.oracle && !oracle_line(out, oracle::reference_bracket(kind, a, b), result)) {
        return kAssertionFailed;
      }
      return kOk;
    }
    if (eom_cmd->parsed()) {
      const BracketKind kind = require_kind(kind_name, true);
      const HybridExpr h = parse_input(ham_text);
      const HybridExpr a = parse_input(a_text);
      const HybridExpr result = eom(kind, a, h);
      out << pretty(result) << "\n";
      if (o.oracle && !oracle_line(out, oracle::reference_eom(kind, a, h), result)) {
        return kAssertionFailed;
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    err << describe_error(e, current_input) << "\n";
    return exit_code_for(e);
  }
  return kOk;
}

}  // namespace hqc::cli
