#pragma once

#include "hqc/calculus.hpp"
#include "hqc/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace hqc::oracle {

/// How the oracle turns function symbols into polynomials (V -> arg^g) and how
/// many test states it tries per mode.
struct OracleConfig {
  unsigned max_test_degree = 4;
  std::map<std::string, unsigned> func_powers;

  /// Distinct powers per symbol, each at least 3 and above every derivative
  /// order present; test degree at least 4 and at least the momentum degree.
  static OracleConfig covering(const std::vector<HybridExpr>& exprs);
};

/// Polynomial in formal variables s_1..s_modes whose coefficients are
/// Gaussian rationals times classical monomials. Zero entries never stored.
class PolyState {
 public:
  /// Exponents of s_1..s_modes, then x_1, k_1, x_2, k_2, ...; zeros past the
  /// modes are trimmed so equal monomials have equal keys.
  using Key = std::vector<unsigned>;
  using Map = std::map<Key, Coefficient>;

  explicit PolyState(unsigned modes) : modes_(modes) {}

  /// The test state s_1^e_1 ... s_n^e_n.
  static PolyState monomial(std::vector<unsigned> exponents);

  unsigned modes() const { return modes_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Key key(std::vector<unsigned> s, const ClassicalMonomial& m = {}) const;
  unsigned s_exponent(const Key& key, unsigned mode) const;
  unsigned x_exponent(const Key& key, unsigned dof) const;
  unsigned k_exponent(const Key& key, unsigned dof) const;

  void add(const Key& key, const Coefficient& c);

  PolyState times_s(unsigned mode) const;
  /// -i d/ds_mode
  PolyState momentum(unsigned mode) const;
  PolyState times(const Coefficient& c, const ClassicalMonomial& m) const;
  /// Commutative product; both states must have the same modes.
  PolyState times(const PolyState& m) const;
  PolyState times_x(unsigned dof) const;
  PolyState times_k(unsigned dof) const;

  friend bool operator==(const PolyState& a, const PolyState& b) = default;

 private:
  std::size_t x_slot(unsigned dof) const { return modes_ + 2 * (dof - 1); }
  std::size_t k_slot(unsigned dof) const { return modes_ + 2 * (dof - 1) + 1; }
  static unsigned at(const Key& key, std::size_t slot) { return slot < key.size() ? key[slot] : 0; }
  void raise(Key& key, std::size_t slot, unsigned by) const;
  PolyState shifted(std::size_t slot) const;

  unsigned modes_;
  Map terms_;
};

/// Replaces each f^(n)(arg) by g(g-1)...(g-n+1) arg^(g-n), expanded in place.
/// The result is raw: words are not reordered.
HybridExpr concretize_functions(const HybridExpr& e, const OracleConfig& cfg);

/// Applies a function-free expression as a differential operator: q_m
/// multiplies by s_m, p_m acts as -i d/ds_m, words act right to left.
PolyState rep_apply(const HybridExpr& e, const PolyState& f);

/// Same, with each f^(n)(arg) acting as multiplication by its concretization.
/// Equivalent to rep_apply(concretize_functions(e, cfg), f) without expanding
/// the concretized words.
PolyState rep_apply(const HybridExpr& e, const PolyState& f, const OracleConfig& cfg);

/// Compares both operators on every test state s^t with 0 <= t_m <= max_test_degree.
bool oracle_equal(const HybridExpr& a, const HybridExpr& b, const OracleConfig& cfg);

/// oracle_equal with OracleConfig::covering({a, b}).
bool oracle_equal(const HybridExpr& a, const HybridExpr& b);

// Reference constructions that never normal-order: products concatenate
// words, derivatives act letter by letter. Their results are raw and only
// meaningful through oracle_equal.
HybridExpr reference_dagger(const HybridExpr& e);
HybridExpr reference_bracket(BracketKind kind, const HybridExpr& a, const HybridExpr& b);
HybridExpr reference_eom(BracketKind kind, const HybridExpr& a, const HybridExpr& h);

}  // namespace hqc::oracle
