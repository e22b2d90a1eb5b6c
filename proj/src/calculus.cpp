#include "hqc/calculus.hpp"

#include "hqc/errors.hpp"

namespace hqc {

namespace {

enum class Wrt { X, K };

void check_dof(const HybridExpr& e, unsigned dof) {
  if (dof == 0 || dof > e.table()->classical_dofs()) {
    throw ValidationError("classical dof " + std::to_string(dof) + " out of range");
  }
}

HybridExpr derivative_raw(const HybridExpr& e, unsigned dof, Wrt wrt) {
  check_dof(e, dof);
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    const auto& exps = wrt == Wrt::X ? t.classical.x : t.classical.k;
    if (auto it = exps.find(dof); it != exps.end()) {
      Term d = t;
      auto& dexps = wrt == Wrt::X ? d.classical.x : d.classical.k;
      d.coeff *= Coefficient(static_cast<long long>(it->second));
      if (--dexps[dof] == 0) dexps.erase(dof);
      out.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      const auto* f = std::get_if<FuncFactor>(&t.word[i]);
      if (!f) continue;
      Rational b = wrt == Wrt::X ? f->arg.x_coeff(dof) : f->arg.k_coeff(dof);
      if (b == 0) continue;
      Term d = t;
      d.coeff *= Coefficient(b);
      d.word[i] = f->derivative();
      out.push_back(std::move(d));
    }
  }
  return HybridExpr::raw(e.table(), std::move(out));
}

}  // namespace

std::string to_string(BracketKind kind) {
  switch (kind) {
    case BracketKind::Commutator:
      return "commutator";
    case BracketKind::Poisson:
      return "poisson";
    case BracketKind::Anderson:
      return "anderson";
    case BracketKind::Aleksandrov:
      return "aleksandrov";
  }
  return "unknown";
}

std::optional<BracketKind> parse_bracket_kind(std::string_view name) {
  if (name == "commutator") return BracketKind::Commutator;
  if (name == "poisson") return BracketKind::Poisson;
  if (name == "anderson") return BracketKind::Anderson;
  if (name == "aleksandrov") return BracketKind::Aleksandrov;
  return std::nullopt;
}

namespace detail {

HybridExpr pd_x_raw(const HybridExpr& e, unsigned dof) { return derivative_raw(e, dof, Wrt::X); }
HybridExpr pd_k_raw(const HybridExpr& e, unsigned dof) { return derivative_raw(e, dof, Wrt::K); }

}  // namespace detail

HybridExpr pd_x(const HybridExpr& e, unsigned dof) { return canonicalize(detail::pd_x_raw(e, dof)); }
HybridExpr pd_k(const HybridExpr& e, unsigned dof) { return canonicalize(detail::pd_k_raw(e, dof)); }

HybridExpr commutator(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  return sub(mul(a, b), mul(b, a));
}

HybridExpr poisson(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  HybridExpr result = HybridExpr::zero(a.table());
  for (unsigned d = 1; d <= a.table()->classical_dofs(); ++d) {
    result = add(result, sub(mul(pd_x(a, d), pd_k(b, d)), mul(pd_k(a, d), pd_x(b, d))));
  }
  return result;
}

HybridExpr bracket(BracketKind kind, const HybridExpr& a, const HybridExpr& b) {
  const Coefficient i = Coefficient::imaginary_unit();
  const Coefficient half_i(Rational(0), Rational(1, 2));
  switch (kind) {
    case BracketKind::Commutator:
      return commutator(a, b);
    case BracketKind::Poisson:
      return poisson(a, b);
    case BracketKind::Anderson:
      return add(commutator(a, b), scale(i, poisson(a, b)));
    case BracketKind::Aleksandrov:
      return add(commutator(a, b),
                 sub(scale(half_i, poisson(a, b)), scale(half_i, poisson(b, a))));
  }
  throw ValidationError("unknown bracket kind");
}

HybridExpr eom(BracketKind kind, const HybridExpr& a, const HybridExpr& h) {
  if (kind == BracketKind::Poisson) {
    throw ValidationError("poisson is not a dynamical bracket; use anderson, aleksandrov or commutator");
  }
  return scale(-Coefficient::imaginary_unit(), bracket(kind, a, h));
}

}  // namespace hqc
