#pragma once

#include "hqc/calculus.hpp"
#include "hqc/expr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hqc {

enum class CheckKind { Antisymmetry, Leibniz, HermiticityOfEom, Conservation };

/// antisymmetry, leibniz, hermiticity_of_eom, conservation
std::string to_string(CheckKind kind);
std::optional<CheckKind> parse_check_kind(std::string_view name);

/// Outcome of one check. `passed` holds exactly when `defect` is zero.
struct CheckReport {
  CheckKind kind;
  BracketKind bracket;
  std::vector<std::pair<std::string, std::string>> inputs;  // name -> rendered text
  bool passed;
  HybridExpr defect;
  /// Per-ordering parts of a symmetrized Leibniz defect; empty otherwise.
  std::vector<std::pair<std::string, HybridExpr>> components;
};

CheckReport make_report(CheckKind kind, BracketKind bracket,
                        std::vector<std::pair<std::string, std::string>> inputs, HybridExpr defect);

/// bracket(a,b) + bracket(b,a)
HybridExpr antisymmetry_defect(BracketKind kind, const HybridExpr& a, const HybridExpr& b);

/// eom(a*b) - (eom(a)*b + a*eom(b)), factor order kept as written.
HybridExpr leibniz_defect(BracketKind kind, const HybridExpr& a, const HybridExpr& b,
                          const HybridExpr& h);

/// e - dagger(e); zero iff e is hermitian.
HybridExpr hermiticity_defect(const HybridExpr& e);

/// Defect is eom(kind, a, h) - rate; plain conservation when rate is zero.
CheckReport conservation_check(BracketKind kind, const HybridExpr& a, const HybridExpr& h);
CheckReport conservation_check(BracketKind kind, const HybridExpr& a, const HybridExpr& h,
                               const HybridExpr& rate);

}  // namespace hqc
