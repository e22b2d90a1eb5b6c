#include "hqc/report.hpp"

#include <sstream>

namespace hqc {

namespace {

using json = nlohmann::ordered_json;

json rational_json(const Rational& r) { return to_string(r); }

json exponents_json(const std::map<unsigned, unsigned>& m) {
  json out = json::object();
  for (const auto& [i, e] : m) out[std::to_string(i)] = e;
  return out;
}

json linear_json(const std::map<unsigned, Rational>& m) {
  json out = json::object();
  for (const auto& [i, c] : m) out[std::to_string(i)] = rational_json(c);
  return out;
}

json letter_json(const Letter& l, const SymbolTable& table) {
  if (const auto* q = std::get_if<Position>(&l)) return {{"type", "q"}, {"mode", q->mode}};
  if (const auto* p = std::get_if<Momentum>(&l)) return {{"type", "p"}, {"mode", p->mode}};
  const auto& f = std::get<FuncFactor>(l);
  return {{"type", "f"},
          {"name", table.function_name(f.symbol)},
          {"deriv", f.deriv_order},
          {"arg",
           {{"q", linear_json(f.arg.q)},
            {"x", linear_json(f.arg.x)},
            {"k", linear_json(f.arg.k)},
            {"const", rational_json(f.arg.constant)}}}};
}

const char* expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Pass:
      return "pass";
    case Expectation::Fail:
      return "fail";
    case Expectation::None:
      break;
  }
  return nullptr;
}

}  // namespace

json terms_to_json(const HybridExpr& expr) {
  const HybridExpr e = canonicalize(expr);
  json out = json::array();
  for (const auto& t : e.terms()) {
    json word = json::array();
    for (const auto& l : t.word) word.push_back(letter_json(l, *e.table()));
    out.push_back({{"coeff", {{"re", rational_json(t.coeff.re())}, {"im", rational_json(t.coeff.im())}}},
                   {"x", exponents_json(t.classical.x)},
                   {"k", exponents_json(t.classical.k)},
                   {"word", std::move(word)}});
  }
  return out;
}

json report_to_json(const std::string& scenario_name, const Scenario& scenario,
                    const std::vector<CheckReport>& reports) {
  json results = json::array();
  int passed = 0;
  int met = 0;
  int violated = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    json inputs = json::object();
    for (const auto& [name, text] : r.inputs) inputs[name] = text;
    json entry = {{"kind", to_string(r.kind)},
                  {"bracket", to_string(r.bracket)},
                  {"inputs", std::move(inputs)},
                  {"passed", r.passed},
                  {"defect", pretty(r.defect)},
                  {"defect_terms", terms_to_json(r.defect)}};
    if (!r.components.empty()) {
      json components = json::object();
      for (const auto& [name, e] : r.components) components[name] = pretty(e);
      entry["components"] = std::move(components);
    }
    if (i < scenario.checks.size()) {
      if (const char* expect = expectation_name(scenario.checks[i].expect)) {
        const bool ok = meets_expectation(scenario.checks[i], r);
        entry["expect"] = expect;
        entry["expectation_met"] = ok;
        (ok ? met : violated) += 1;
      }
    }
    passed += r.passed ? 1 : 0;
    results.push_back(std::move(entry));
  }
  return {{"scenario", scenario_name},
          {"results", std::move(results)},
          {"summary",
           {{"passed", passed},
            {"failed", static_cast<int>(reports.size()) - passed},
            {"expectations_met", met},
            {"expectations_violated", violated}}}};
}

std::string report_to_text(const std::string& scenario_name, const Scenario& scenario,
                           const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "scenario " << scenario_name << "\n";
  int passed = 0;
  int violated = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << (r.passed ? "PASS " : "FAIL ") << to_string(r.kind) << " [" << to_string(r.bracket) << "]";
    for (const auto& [name, text] : r.inputs) os << " " << name << "=" << text;
    os << " => defect " << pretty(r.defect);
    for (const auto& [name, e] : r.components) os << "; " << name << ": " << pretty(e);
    if (i < scenario.checks.size() && scenario.checks[i].expect != Expectation::None) {
      const bool ok = meets_expectation(scenario.checks[i], r);
      os << " (expected " << expectation_name(scenario.checks[i].expect) << (ok ? ", ok)" : ", MISMATCH)");
      violated += ok ? 0 : 1;
    }
    os << "\n";
    passed += r.passed ? 1 : 0;
  }
  os << "summary: " << passed << " passed, " << reports.size() - passed << " failed, " << violated
     << " expectation mismatches\n";
  return os.str();
}

}  // namespace hqc
