#pragma once

#include "hqc/calculus.hpp"
#include "hqc/checks.hpp"
#include "hqc/dsl.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hqc {

enum class Expectation { None, Pass, Fail };

/// One entry of a scenario's "checks" array, with every expression already
/// evaluated.
struct CheckSpec {
  CheckKind kind = CheckKind::Conservation;
  BracketKind bracket = BracketKind::Anderson;
  /// Expression arguments by role (observable, rate, a, b), in document order.
  std::vector<std::pair<std::string, HybridExpr>> args;
  bool symmetrize = false;
  Expectation expect = Expectation::None;

  const HybridExpr& arg(std::string_view role) const;
  const HybridExpr* find_arg(std::string_view role) const;
};

/// Declarative check suite. Documents look like
///
///   { "version": 1,
///     "name": "optional label",
///     "symbols": {"quantum_modes": 1, "classical_dofs": 1,
///                 "functions": [{"name": "V", "real": true}]},
///     "definitions": {"H": "1/2*k*p^2", "A": "x*q + q*x"},
///     "hamiltonian": "H",                       (optional, defaults to H)
///     "bracket": "anderson",
///     "checks": [ {"kind": "conservation", "observable": "p + k",
///                  "rate": "0", "bracket": "aleksandrov", "expect": "pass"},
///                 {"kind": "hermiticity_of_eom", "observable": "A"},
///                 {"kind": "leibniz", "a": "x", "b": "q", "symmetrize": true},
///                 {"kind": "antisymmetry", "a": "x*q", "b": "k*p"} ] }
struct Scenario {
  std::string name;
  TablePtr table;
  std::vector<std::pair<std::string, std::string>> definition_texts;
  Environment definitions;
  std::string hamiltonian_text;
  std::optional<HybridExpr> hamiltonian;
  BracketKind bracket = BracketKind::Anderson;
  std::vector<CheckSpec> checks;
};

/// Validates the whole document and evaluates every expression eagerly.
/// Schema problems raise ValidationError whose message starts with a JSON
/// pointer; expression problems raise ParseError / ValidationError naming
/// the definition or check.
Scenario parse_scenario(std::string_view document);

/// Runs every check in order. Failing checks are results, never errors.
std::vector<CheckReport> run_checks(const Scenario& scenario);

/// Evaluates a single check against the given Hamiltonian.
CheckReport run_check(const CheckSpec& spec, const HybridExpr& hamiltonian);

/// True when the report agrees with the entry's "expect" annotation (or the
/// entry has none).
bool meets_expectation(const CheckSpec& spec, const CheckReport& report);

}  // namespace hqc
