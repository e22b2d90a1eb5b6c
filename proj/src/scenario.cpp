#include "hqc/scenario.hpp"

#include "hqc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace hqc {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
  throw ValidationError("schema error at " + (pointer.empty() ? std::string("/") : pointer) + ": " +
                        message);
}

const json& require(const json& obj, const std::string& key, const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(pointer, "missing required key \"" + key + "\"");
  return *it;
}

std::string require_string(const json& value, const std::string& pointer) {
  if (!value.is_string()) schema_error(pointer, "expected a string");
  return value.get<std::string>();
}

unsigned require_positive(const json& value, const std::string& pointer) {
  if (!value.is_number_unsigned() || value.get<unsigned long long>() == 0 ||
      value.get<unsigned long long>() > 64) {
    schema_error(pointer, "expected an integer between 1 and 64");
  }
  return value.get<unsigned>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(pointer + "/" + key, "unknown key");
  }
}

// Re-raises expression errors with the owning definition or check attached.
template <typename Fn>
HybridExpr with_context(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(e.position(), context + ": " + e.message(), e.expected());
  } catch (const ValidationError& e) {
    if (e.has_position()) throw ValidationError(context + ": " + e.what(), e.position());
    throw ValidationError(context + ": " + e.what());
  }
}

TablePtr parse_symbols(const json& symbols) {
  const std::string ptr = "/symbols";
  if (!symbols.is_object()) schema_error(ptr, "expected an object");
  reject_unknown_keys(symbols, {"quantum_modes", "classical_dofs", "functions"}, ptr);
  const unsigned modes = require_positive(require(symbols, "quantum_modes", ptr), ptr + "/quantum_modes");
  const unsigned dofs = require_positive(require(symbols, "classical_dofs", ptr), ptr + "/classical_dofs");
  std::vector<FunctionSymbol> functions;
  if (auto it = symbols.find("functions"); it != symbols.end()) {
    if (!it->is_array()) schema_error(ptr + "/functions", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string fptr = ptr + "/functions/" + std::to_string(i);
      const json& f = (*it)[i];
      if (!f.is_object()) schema_error(fptr, "expected an object");
      reject_unknown_keys(f, {"name", "real"}, fptr);
      FunctionSymbol sym;
      sym.name = require_string(require(f, "name", fptr), fptr + "/name");
      if (auto r = f.find("real"); r != f.end()) {
        if (!r->is_boolean()) schema_error(fptr + "/real", "expected a boolean");
        sym.real = r->get<bool>();
      }
      functions.push_back(std::move(sym));
    }
  }
  try {
    return make_table(modes, dofs, std::move(functions));
  } catch (const ValidationError& e) {
    schema_error(ptr, e.what());
  }
}

}  // namespace

const HybridExpr* CheckSpec::find_arg(std::string_view role) const {
  for (const auto& [name, e] : args) {
    if (name == role) return &e;
  }
  return nullptr;
}

const HybridExpr& CheckSpec::arg(std::string_view role) const {
  if (const auto* e = find_arg(role)) return *e;
  throw ValidationError("check is missing argument '" + std::string(role) + "'");
}

Scenario parse_scenario(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte > 0 ? e.byte - 1 : 0, std::string("invalid JSON: ") + e.what(),
                     "JSON document");
  }
  if (!doc.is_object()) schema_error("", "expected an object");
  reject_unknown_keys(doc, {"version", "name", "symbols", "definitions", "hamiltonian", "bracket", "checks"},
                      "");

  const json& version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<long long>() != 1) {
    schema_error("/version", "expected 1");
  }

  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) s.name = require_string(*it, "/name");
  s.table = parse_symbols(require(doc, "symbols", ""));

  if (auto it = doc.find("definitions"); it != doc.end()) {
    if (!it->is_object()) schema_error("/definitions", "expected an object");
    for (const auto& [name, value] : it->items()) {
      const std::string ptr = "/definitions/" + name;
      const std::string text = require_string(value, ptr);
      if (is_reserved_name(name) || s.table->find_function(name) ||
          s.definitions.count(name) > 0) {
        schema_error(ptr, "definition name '" + name + "' is reserved or already used");
      }
      bool identifier = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
      for (char c : name) identifier = identifier && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!identifier) schema_error(ptr, "definition name must be an identifier");
      HybridExpr e = with_context("definition '" + name + "'",
                                  [&] { return parse(text, s.table, s.definitions); });
      s.definition_texts.emplace_back(name, text);
      s.definitions.emplace(name, std::move(e));
    }
  }

  const std::string bracket_name = require_string(require(doc, "bracket", ""), "/bracket");
  const auto bracket = parse_bracket_kind(bracket_name);
  if (!bracket || *bracket == BracketKind::Poisson) {
    schema_error("/bracket", "expected \"anderson\", \"aleksandrov\" or \"commutator\"");
  }
  s.bracket = *bracket;

  if (auto it = doc.find("hamiltonian"); it != doc.end()) {
    s.hamiltonian_text = require_string(*it, "/hamiltonian");
  } else if (s.definitions.count("H") > 0) {
    s.hamiltonian_text = "H";
  }
  if (!s.hamiltonian_text.empty()) {
    s.hamiltonian = with_context("hamiltonian", [&] { return parse(s.hamiltonian_text, s.table, s.definitions); });
  }

  const json& checks = require(doc, "checks", "");
  if (!checks.is_array()) schema_error("/checks", "expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string ptr = "/checks/" + std::to_string(i);
    const json& c = checks[i];
    if (!c.is_object()) schema_error(ptr, "expected an object");
    const std::string kind_name = require_string(require(c, "kind", ptr), ptr + "/kind");
    const auto kind = parse_check_kind(kind_name);
    if (!kind) schema_error(ptr + "/kind", "unknown check kind \"" + kind_name + "\"");

    CheckSpec spec;
    spec.kind = *kind;
    spec.bracket = s.bracket;

    std::vector<std::string> required;
    std::vector<std::string> optional;
    switch (*kind) {
      case CheckKind::Conservation:
        required = {"observable"};
        optional = {"rate"};
        break;
      case CheckKind::HermiticityOfEom:
        required = {"observable"};
        break;
      case CheckKind::Leibniz:
      case CheckKind::Antisymmetry:
        required = {"a", "b"};
        break;
    }
    for (const auto& [key, value] : c.items()) {
      const bool known = key == "kind" || key == "bracket" || key == "expect" ||
                         (key == "symmetrize" && *kind == CheckKind::Leibniz) ||
                         std::find(required.begin(), required.end(), key) != required.end() ||
                         std::find(optional.begin(), optional.end(), key) != optional.end();
      if (!known) schema_error(ptr + "/" + key, "unknown key for check kind \"" + kind_name + "\"");
    }

    if (auto b = c.find("bracket"); b != c.end()) {
      const std::string name = require_string(*b, ptr + "/bracket");
      const auto k = parse_bracket_kind(name);
      const bool dynamical = k && *k != BracketKind::Poisson;
      if (!k || (!dynamical && *kind != CheckKind::Antisymmetry)) {
        schema_error(ptr + "/bracket", "invalid bracket \"" + name + "\"");
      }
      spec.bracket = *k;
    }
    if (auto e = c.find("expect"); e != c.end()) {
      const std::string value = require_string(*e, ptr + "/expect");
      if (value == "pass") {
        spec.expect = Expectation::Pass;
      } else if (value == "fail") {
        spec.expect = Expectation::Fail;
      } else {
        schema_error(ptr + "/expect", "expected \"pass\" or \"fail\"");
      }
    }
    if (auto e = c.find("symmetrize"); e != c.end()) {
      if (!e->is_boolean()) schema_error(ptr + "/symmetrize", "expected a boolean");
      spec.symmetrize = e->get<bool>();
    }

    auto read_expr = [&](const std::string& role) {
      const std::string text = require_string(c.at(role), ptr + "/" + role);
      spec.args.emplace_back(role, with_context("check " + std::to_string(i) + " " + role,
                                                [&] { return parse(text, s.table, s.definitions); }));
    };
    for (const auto& role : required) {
      require(c, role, ptr);
      read_expr(role);
    }
    for (const auto& role : optional) {
      if (c.contains(role)) read_expr(role);
    }

    const bool needs_h = *kind != CheckKind::Antisymmetry;
    if (needs_h && !s.hamiltonian) {
      schema_error(ptr, "check needs a Hamiltonian: add \"hamiltonian\" or define \"H\"");
    }
    s.checks.push_back(std::move(spec));
  }
  return s;
}

CheckReport run_check(const CheckSpec& spec, const HybridExpr& hamiltonian) {
  switch (spec.kind) {
    case CheckKind::Conservation: {
      const HybridExpr* rate = spec.find_arg("rate");
      return rate ? conservation_check(spec.bracket, spec.arg("observable"), hamiltonian, *rate)
                  : conservation_check(spec.bracket, spec.arg("observable"), hamiltonian);
    }
    case CheckKind::HermiticityOfEom: {
      const HybridExpr& a = spec.arg("observable");
      return make_report(CheckKind::HermiticityOfEom, spec.bracket,
                         {{"observable", pretty(a)}, {"hamiltonian", pretty(hamiltonian)}},
                         hermiticity_defect(eom(spec.bracket, a, hamiltonian)));
    }
    case CheckKind::Leibniz: {
      const HybridExpr& a = spec.arg("a");
      const HybridExpr& b = spec.arg("b");
      std::vector<std::pair<std::string, std::string>> inputs{
          {"a", pretty(a)}, {"b", pretty(b)}, {"hamiltonian", pretty(hamiltonian)}};
      HybridExpr ab = leibniz_defect(spec.bracket, a, b, hamiltonian);
      if (!spec.symmetrize) return make_report(CheckKind::Leibniz, spec.bracket, std::move(inputs), ab);
      HybridExpr ba = leibniz_defect(spec.bracket, b, a, hamiltonian);
      CheckReport report = make_report(CheckKind::Leibniz, spec.bracket, std::move(inputs), add(ab, ba));
      report.components = {{"a*b", std::move(ab)}, {"b*a", std::move(ba)}};
      return report;
    }
    case CheckKind::Antisymmetry: {
      const HybridExpr& a = spec.arg("a");
      const HybridExpr& b = spec.arg("b");
      return make_report(CheckKind::Antisymmetry, spec.bracket, {{"a", pretty(a)}, {"b", pretty(b)}},
                         antisymmetry_defect(spec.bracket, a, b));
    }
  }
  throw ValidationError("unknown check kind");
}

std::vector<CheckReport> run_checks(const Scenario& scenario) {
  std::vector<CheckReport> reports;
  reports.reserve(scenario.checks.size());
  for (const auto& spec : scenario.checks) {
    if (spec.kind != CheckKind::Antisymmetry && !scenario.hamiltonian) {
      throw ValidationError("scenario has no Hamiltonian");
    }
    const HybridExpr h = scenario.hamiltonian ? *scenario.hamiltonian : HybridExpr::zero(scenario.table);
    reports.push_back(run_check(spec, h));
  }
  return reports;
}

bool meets_expectation(const CheckSpec& spec, const CheckReport& report) {
  switch (spec.expect) {
    case Expectation::Pass:
      return report.passed;
    case Expectation::Fail:
      return !report.passed;
    case Expectation::None:
      return true;
  }
  return true;
}

}  // namespace hqc
