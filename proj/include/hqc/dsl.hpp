#pragma once

#include "hqc/coefficient.hpp"
#include "hqc/expr.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

/// Syntax tree of the expression language.
///
///   sum     := prod (('+' | '-') prod)*
///   prod    := unary ('*' unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' nat)?
///   atom    := rational | 'i' | symbol | funcapp | call | '(' sum ')'
///   symbol  := ('q' | 'p' | 'x' | 'k') index?   (index defaults to 1)
///   funcapp := ident '\''* '(' sum ')'
///   call    := ('dag' | 'comm' | 'pb' | 'anderson' | 'alex') '(' sum (',' sum)* ')'
///
/// Bare identifiers that are not generators name previously bound
/// expressions (scenario definitions, REPL :let bindings).
struct Ast {
  enum class Kind { Sum, Product, Power, Neg, Rational, ImagUnit, Symbol, FuncApp, Call };

  Kind kind = Kind::Rational;
  std::size_t position = 0;  // byte offset of the node's first token
  std::string name;          // Symbol, FuncApp, Call
  unsigned index = 0;        // Symbol index (generators) or prime count (FuncApp)
  unsigned exponent = 0;     // Power
  Rational value;            // Rational
  std::vector<Ast> children;
};

/// Throws ParseError pointing at the first offending token.
Ast parse_ast(std::string_view text);

using Environment = std::map<std::string, HybridExpr, std::less<>>;

enum class EvalMode {
  Canonical,  // every intermediate result normal-ordered
  Raw,        // sums/products/powers concatenate without reordering
};

/// Resolves symbols against the table, validates function arguments and
/// evaluates builtins. Throws ValidationError with the node position.
HybridExpr evaluate(const Ast& ast, const TablePtr& table, const Environment& env = {},
                    EvalMode mode = EvalMode::Canonical);

/// parse_ast + evaluate; canonical result.
HybridExpr parse(std::string_view text, const TablePtr& table, const Environment& env = {});

/// Same value as `parse`, but products are left exactly as written.
HybridExpr parse_raw(std::string_view text, const TablePtr& table, const Environment& env = {});

/// Deterministic rendering in canonical term order; re-parses to an equal
/// expression.
std::string pretty(const HybridExpr& e);

/// Renders a function argument, e.g. "q - x".
std::string pretty(const LinearArg& arg, const SymbolTable& table);

}  // namespace hqc
