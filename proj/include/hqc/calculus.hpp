#pragma once

#include "hqc/expr.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace hqc {

enum class BracketKind { Commutator, Poisson, Anderson, Aleksandrov };

/// Lowercase name: commutator, poisson, anderson, aleksandrov.
std::string to_string(BracketKind kind);
std::optional<BracketKind> parse_bracket_kind(std::string_view name);

/// Partial derivative with respect to x_dof. Positions, momenta and k's are
/// constants; a function letter f(arg) yields (coefficient of x_dof) f'(arg).
HybridExpr pd_x(const HybridExpr& e, unsigned dof);
HybridExpr pd_k(const HybridExpr& e, unsigned dof);

HybridExpr commutator(const HybridExpr& a, const HybridExpr& b);

/// Sum over dofs of dA/dx dB/dk - dA/dk dB/dx. Derivatives of `a` always
/// multiply from the left, derivatives of `b` from the right.
HybridExpr poisson(const HybridExpr& a, const HybridExpr& b);

/// commutator:  [a,b]
/// poisson:     {a,b}
/// anderson:    [a,b] + i{a,b}
/// aleksandrov: [a,b] + (i/2){a,b} - (i/2){b,a}
HybridExpr bracket(BracketKind kind, const HybridExpr& a, const HybridExpr& b);

/// Time derivative of `a` under Hamiltonian `h`: -i * bracket(kind, a, h).
/// The Poisson bracket alone is not a dynamical bracket and is rejected.
HybridExpr eom(BracketKind kind, const HybridExpr& a, const HybridExpr& h);

namespace detail {

// Derivation applied term by term with words kept in place, so raw input
// gives raw output.
HybridExpr pd_x_raw(const HybridExpr& e, unsigned dof);
HybridExpr pd_k_raw(const HybridExpr& e, unsigned dof);

}  // namespace detail

}  // namespace hqc
