#include "hqc/checks.hpp"

#include "hqc/dsl.hpp"

namespace hqc {

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Antisymmetry:
      return "antisymmetry";
    case CheckKind::Leibniz:
      return "leibniz";
    case CheckKind::HermiticityOfEom:
      return "hermiticity_of_eom";
    case CheckKind::Conservation:
      return "conservation";
  }
  return "unknown";
}

std::optional<CheckKind> parse_check_kind(std::string_view name) {
  if (name == "antisymmetry") return CheckKind::Antisymmetry;
  if (name == "leibniz") return CheckKind::Leibniz;
  if (name == "hermiticity_of_eom") return CheckKind::HermiticityOfEom;
  if (name == "conservation") return CheckKind::Conservation;
  return std::nullopt;
}

CheckReport make_report(CheckKind kind, BracketKind bracket,
                        std::vector<std::pair<std::string, std::string>> inputs, HybridExpr defect) {
  HybridExpr canonical = canonicalize(defect);
  const bool passed = canonical.is_zero();
  return CheckReport{kind, bracket, std::move(inputs), passed, std::move(canonical), {}};
}

HybridExpr antisymmetry_defect(BracketKind kind, const HybridExpr& a, const HybridExpr& b) {
  return add(bracket(kind, a, b), bracket(kind, b, a));
}

HybridExpr leibniz_defect(BracketKind kind, const HybridExpr& a, const HybridExpr& b,
                          const HybridExpr& h) {
  HybridExpr whole = eom(kind, mul(a, b), h);
  HybridExpr split = add(mul(eom(kind, a, h), b), mul(a, eom(kind, b, h)));
  return sub(whole, split);
}

HybridExpr hermiticity_defect(const HybridExpr& e) { return sub(e, dagger(e)); }

CheckReport conservation_check(BracketKind kind, const HybridExpr& a, const HybridExpr& h) {
  return conservation_check(kind, a, h, HybridExpr::zero(a.table()));
}

CheckReport conservation_check(BracketKind kind, const HybridExpr& a, const HybridExpr& h,
                               const HybridExpr& rate) {
  std::vector<std::pair<std::string, std::string>> inputs{{"observable", pretty(a)},
                                                          {"hamiltonian", pretty(h)}};
  if (!rate.is_zero()) inputs.emplace_back("rate", pretty(rate));
  return make_report(CheckKind::Conservation, kind, std::move(inputs), sub(eom(kind, a, h), rate));
}

}  // namespace hqc
