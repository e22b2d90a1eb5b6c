#pragma once

#include "hqc/checks.hpp"
#include "hqc/scenario.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hqc {

/// Structured form of an expression: one object per term with the exact
/// coefficient, classical exponents and the quantum word.
nlohmann::ordered_json terms_to_json(const HybridExpr& e);

/// {"scenario", "results": [...], "summary": {"passed", "failed", "expectations_met",
/// "expectations_violated"}}
nlohmann::ordered_json report_to_json(const std::string& scenario_name, const Scenario& scenario,
                                      const std::vector<CheckReport>& reports);

/// Human-readable report, one line per check plus a summary line.
std::string report_to_text(const std::string& scenario_name, const Scenario& scenario,
                           const std::vector<CheckReport>& reports);

}  // namespace hqc
