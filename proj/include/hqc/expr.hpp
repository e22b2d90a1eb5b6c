#pragma once

#include "hqc/coefficient.hpp"
#include "hqc/symbols.hpp"

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <variant>
#include <vector>

namespace hqc {

/// Real-linear combination of q's, x's, k's and a constant. Never contains a
/// momentum, which keeps every function letter commuting with all positions
/// and with every other function letter.
struct LinearArg {
  std::map<unsigned, Rational> q;
  std::map<unsigned, Rational> x;
  std::map<unsigned, Rational> k;
  Rational constant;

  bool is_zero() const { return q.empty() && x.empty() && k.empty() && constant == 0; }
  Rational q_coeff(unsigned mode) const;
  Rational x_coeff(unsigned dof) const;
  Rational k_coeff(unsigned dof) const;

  friend bool operator==(const LinearArg&, const LinearArg&) = default;
};

std::weak_ordering compare(const LinearArg& a, const LinearArg& b);

/// n-th derivative of a declared real function symbol evaluated at `arg`.
struct FuncFactor {
  std::size_t symbol = 0;
  unsigned deriv_order = 0;
  LinearArg arg;

  FuncFactor derivative() const { return {symbol, deriv_order + 1, arg}; }

  friend bool operator==(const FuncFactor&, const FuncFactor&) = default;
  friend std::weak_ordering operator<=>(const FuncFactor& a, const FuncFactor& b);
};

struct Position {
  unsigned mode = 1;
  friend auto operator<=>(const Position&, const Position&) = default;
};

struct Momentum {
  unsigned mode = 1;
  friend auto operator<=>(const Momentum&, const Momentum&) = default;
};

/// A quantum letter. The variant index is the class rank used for normal
/// order: positions, then functions, then momenta.
using Letter = std::variant<Position, FuncFactor, Momentum>;
using QuantumWord = std::vector<Letter>;

std::weak_ordering compare(const Letter& a, const Letter& b);
std::weak_ordering compare(const QuantumWord& a, const QuantumWord& b);

/// True iff letters are in normal order.
bool is_normal_ordered(const QuantumWord& word);

struct ClassicalMonomial {
  std::map<unsigned, unsigned> x;
  std::map<unsigned, unsigned> k;

  bool empty() const { return x.empty() && k.empty(); }
  unsigned degree() const;
  ClassicalMonomial& operator*=(const ClassicalMonomial& other);

  friend bool operator==(const ClassicalMonomial&, const ClassicalMonomial&) = default;
};

/// Lexicographic on the exponent vector (x_1, x_2, ..., k_1, k_2, ...).
std::weak_ordering compare(const ClassicalMonomial& a, const ClassicalMonomial& b);

struct Term {
  Coefficient coeff;
  ClassicalMonomial classical;
  QuantumWord word;

  unsigned degree() const { return classical.degree() + static_cast<unsigned>(word.size()); }

  friend bool operator==(const Term&, const Term&) = default;
};

/// Global term order: higher total degree first, then classical exponent
/// vector, then word letter keys. Ignores coefficients.
std::weak_ordering compare_terms(const Term& a, const Term& b);

/// Element of the hybrid algebra over a symbol table.
///
/// A value is either canonical (normal-ordered words, merged like terms, no
/// zero coefficients, sorted by the global term order) or raw, in which case
/// the terms are kept exactly as constructed. Every algebraic operation
/// accepts both and returns canonical values; only `raw` and the raw_*
/// helpers below produce raw values.
class HybridExpr {
 public:
  explicit HybridExpr(TablePtr table);

  static HybridExpr zero(TablePtr table) { return HybridExpr(std::move(table)); }
  static HybridExpr constant(TablePtr table, Coefficient c);
  static HybridExpr q(TablePtr table, unsigned mode = 1);
  static HybridExpr p(TablePtr table, unsigned mode = 1);
  static HybridExpr x(TablePtr table, unsigned dof = 1);
  static HybridExpr k(TablePtr table, unsigned dof = 1);
  static HybridExpr function(TablePtr table, FuncFactor f);

  /// Validates every index against the table and stores the terms verbatim.
  static HybridExpr raw(TablePtr table, std::vector<Term> terms);

  const TablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_canonical() const { return canonical_; }
  bool is_zero() const;

 private:
  friend HybridExpr canonicalize(const HybridExpr& e);
  friend HybridExpr make_canonical(TablePtr table, std::vector<Term> terms);

  TablePtr table_;
  std::vector<Term> terms_;
  bool canonical_ = true;
};

/// Rewrites an arbitrary term list into the unique canonical form.
HybridExpr make_canonical(TablePtr table, std::vector<Term> terms);

HybridExpr canonicalize(const HybridExpr& e);
HybridExpr add(const HybridExpr& a, const HybridExpr& b);
HybridExpr sub(const HybridExpr& a, const HybridExpr& b);
HybridExpr mul(const HybridExpr& a, const HybridExpr& b);
HybridExpr scale(const Coefficient& c, const HybridExpr& e);
HybridExpr dagger(const HybridExpr& e);
bool equals(const HybridExpr& a, const HybridExpr& b);
bool is_hermitian(const HybridExpr& e);
HybridExpr power(const HybridExpr& e, unsigned n);

// Term-list arithmetic without any reordering. Words are concatenated as
// written, so the result is generally raw.
HybridExpr raw_add(const HybridExpr& a, const HybridExpr& b);
HybridExpr raw_mul(const HybridExpr& a, const HybridExpr& b);
HybridExpr raw_scale(const Coefficient& c, const HybridExpr& e);

/// Throws ValidationError unless both expressions live over equal tables.
void require_same_table(const HybridExpr& a, const HybridExpr& b);

/// Largest power of p_mode in any single word; used to size oracle tests.
unsigned max_momentum_degree(const HybridExpr& e);

/// Normal-ordered expansion of a single word, as (coefficient, word) pairs.
std::vector<std::pair<Coefficient, QuantumWord>> normal_order(const QuantumWord& word);

inline bool operator==(const HybridExpr& a, const HybridExpr& b) { return equals(a, b); }

/// Writes the pretty rendering (see dsl.hpp).
std::ostream& operator<<(std::ostream& os, const HybridExpr& e);

inline HybridExpr operator+(const HybridExpr& a, const HybridExpr& b) { return add(a, b); }
inline HybridExpr operator-(const HybridExpr& a, const HybridExpr& b) { return sub(a, b); }
inline HybridExpr operator*(const HybridExpr& a, const HybridExpr& b) { return mul(a, b); }
inline HybridExpr operator-(const HybridExpr& a) { return scale(Coefficient(-1), a); }

}  // namespace hqc
