#include "hqc/expr.hpp"

#include "hqc/errors.hpp"

#include <algorithm>
#include <string>

namespace hqc {

namespace {

template <typename Value>
Value lookup(const std::map<unsigned, Value>& m, unsigned key) {
  auto it = m.find(key);
  return it == m.end() ? Value(0) : it->second;
}

// Compares two sparse maps as dense vectors indexed by key, absent = 0.
template <typename Value>
std::weak_ordering compare_dense(const std::map<unsigned, Value>& a,
                                 const std::map<unsigned, Value>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first == ib->first) {
      if (ia->second < ib->second) return std::weak_ordering::less;
      if (ib->second < ia->second) return std::weak_ordering::greater;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      return ia->second > 0 ? std::weak_ordering::greater : std::weak_ordering::less;
    } else {
      return ib->second > 0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
  }
  if (ia != a.end()) return ia->second > 0 ? std::weak_ordering::greater : std::weak_ordering::less;
  if (ib != b.end()) return ib->second > 0 ? std::weak_ordering::less : std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

template <typename Value>
void strip_zeros(std::map<unsigned, Value>& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
}

bool is_commuting(const Letter& l) { return !std::holds_alternative<Momentum>(l); }

// Inserts a position or function letter into the commuting prefix of a
// normal-ordered word. Such letters commute with everything they pass.
QuantumWord insert_commuting(const Letter& letter, const QuantumWord& word) {
  QuantumWord out;
  out.reserve(word.size() + 1);
  bool placed = false;
  for (const auto& l : word) {
    if (!placed && (!is_commuting(l) || compare(letter, l) < 0)) {
      out.push_back(letter);
      placed = true;
    }
    out.push_back(l);
  }
  if (!placed) out.push_back(letter);
  return out;
}

QuantumWord insert_momentum(const Momentum& m, const QuantumWord& word) {
  QuantumWord out;
  out.reserve(word.size() + 1);
  bool placed = false;
  for (const auto& l : word) {
    if (!placed) {
      if (const auto* other = std::get_if<Momentum>(&l); other && m.mode < other->mode) {
        out.push_back(m);
        placed = true;
      }
    }
    out.push_back(l);
  }
  if (!placed) out.push_back(m);
  return out;
}

using Expansion = std::vector<std::pair<Coefficient, QuantumWord>>;

// p_mode * word for a normal-ordered word, by p X Y = X (p Y) + [p, X] Y.
Expansion momentum_times(const Momentum& p, const QuantumWord& word, std::size_t start) {
  if (start == word.size() || std::holds_alternative<Momentum>(word[start])) {
    QuantumWord tail(word.begin() + static_cast<std::ptrdiff_t>(start), word.end());
    return {{Coefficient(1), insert_momentum(p, tail)}};
  }
  const Letter& head = word[start];
  QuantumWord rest(word.begin() + static_cast<std::ptrdiff_t>(start) + 1, word.end());

  Expansion out = momentum_times(p, word, start + 1);
  for (auto& [c, w] : out) w = insert_commuting(head, w);

  if (const auto* q = std::get_if<Position>(&head)) {
    if (q->mode == p.mode) out.emplace_back(-Coefficient::imaginary_unit(), rest);
  } else if (const auto* f = std::get_if<FuncFactor>(&head)) {
    Rational a = f->arg.q_coeff(p.mode);
    if (a != 0) {
      out.emplace_back(Coefficient(Rational(0), -a), insert_commuting(f->derivative(), rest));
    }
  }
  return out;
}

struct WordLess {
  bool operator()(const QuantumWord& a, const QuantumWord& b) const { return compare(a, b) < 0; }
};

Expansion merge(const Expansion& in) {
  std::map<QuantumWord, Coefficient, WordLess> acc;
  for (const auto& [c, w] : in) acc[w] += c;
  Expansion out;
  for (auto& [w, c] : acc) {
    if (!c.is_zero()) out.emplace_back(std::move(c), w);
  }
  return out;
}

void validate_arg(const LinearArg& arg, const SymbolTable& table) {
  for (const auto& [m, c] : arg.q) {
    if (m == 0 || m > table.quantum_modes()) {
      throw ValidationError("quantum mode " + std::to_string(m) + " out of range in function argument");
    }
  }
  for (const auto* dofs : {&arg.x, &arg.k}) {
    for (const auto& [d, c] : *dofs) {
      if (d == 0 || d > table.classical_dofs()) {
        throw ValidationError("classical dof " + std::to_string(d) + " out of range in function argument");
      }
    }
  }
  if (arg.is_zero()) throw ValidationError("function argument must not be identically zero");
}

void validate_term(Term& t, const SymbolTable& table) {
  strip_zeros(t.classical.x);
  strip_zeros(t.classical.k);
  for (const auto* dofs : {&t.classical.x, &t.classical.k}) {
    for (const auto& [d, e] : *dofs) {
      if (d == 0 || d > table.classical_dofs()) {
        throw ValidationError("classical dof " + std::to_string(d) + " out of range");
      }
    }
  }
  for (auto& letter : t.word) {
    if (auto* q = std::get_if<Position>(&letter)) {
      if (q->mode == 0 || q->mode > table.quantum_modes()) {
        throw ValidationError("quantum mode " + std::to_string(q->mode) + " out of range");
      }
    } else if (auto* p = std::get_if<Momentum>(&letter)) {
      if (p->mode == 0 || p->mode > table.quantum_modes()) {
        throw ValidationError("quantum mode " + std::to_string(p->mode) + " out of range");
      }
    } else {
      auto& f = std::get<FuncFactor>(letter);
      if (f.symbol >= table.functions().size()) {
        throw ValidationError("function symbol id " + std::to_string(f.symbol) + " not declared");
      }
      strip_zeros(f.arg.q);
      strip_zeros(f.arg.x);
      strip_zeros(f.arg.k);
      validate_arg(f.arg, table);
    }
  }
}

struct TermKey {
  ClassicalMonomial classical;
  QuantumWord word;
};

struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const {
    unsigned da = a.classical.degree() + static_cast<unsigned>(a.word.size());
    unsigned db = b.classical.degree() + static_cast<unsigned>(b.word.size());
    if (da != db) return da > db;
    auto c = compare(a.classical, b.classical);
    if (c != 0) return c < 0;
    return compare(a.word, b.word) < 0;
  }
};

}  // namespace

Rational LinearArg::q_coeff(unsigned mode) const { return lookup(q, mode); }
Rational LinearArg::x_coeff(unsigned dof) const { return lookup(x, dof); }
Rational LinearArg::k_coeff(unsigned dof) const { return lookup(k, dof); }

std::weak_ordering compare(const LinearArg& a, const LinearArg& b) {
  if (auto c = compare_dense(a.q, b.q); c != 0) return c;
  if (auto c = compare_dense(a.x, b.x); c != 0) return c;
  if (auto c = compare_dense(a.k, b.k); c != 0) return c;
  if (a.constant < b.constant) return std::weak_ordering::less;
  if (b.constant < a.constant) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::weak_ordering operator<=>(const FuncFactor& a, const FuncFactor& b) {
  if (a.symbol != b.symbol) return a.symbol <=> b.symbol;
  if (a.deriv_order != b.deriv_order) return a.deriv_order <=> b.deriv_order;
  return compare(a.arg, b.arg);
}

std::weak_ordering compare(const Letter& a, const Letter& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  return std::visit(
      [&](const auto& la) -> std::weak_ordering {
        using T = std::decay_t<decltype(la)>;
        return la <=> std::get<T>(b);
      },
      a);
}

std::weak_ordering compare(const QuantumWord& a, const QuantumWord& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

bool is_normal_ordered(const QuantumWord& word) {
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (compare(word[i - 1], word[i]) > 0) return false;
  }
  return true;
}

unsigned ClassicalMonomial::degree() const {
  unsigned d = 0;
  for (const auto& [i, e] : x) d += e;
  for (const auto& [i, e] : k) d += e;
  return d;
}

ClassicalMonomial& ClassicalMonomial::operator*=(const ClassicalMonomial& other) {
  for (const auto& [i, e] : other.x) x[i] += e;
  for (const auto& [i, e] : other.k) k[i] += e;
  return *this;
}

std::weak_ordering compare(const ClassicalMonomial& a, const ClassicalMonomial& b) {
  if (auto c = compare_dense(a.x, b.x); c != 0) return c;
  return compare_dense(a.k, b.k);
}

std::weak_ordering compare_terms(const Term& a, const Term& b) {
  if (a.degree() != b.degree()) return b.degree() <=> a.degree();
  if (auto c = compare(a.classical, b.classical); c != 0) return c;
  return compare(a.word, b.word);
}

std::vector<std::pair<Coefficient, QuantumWord>> normal_order(const QuantumWord& word) {
  Expansion result{{Coefficient(1), {}}};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    Expansion next;
    for (const auto& [c, w] : result) {
      if (const auto* p = std::get_if<Momentum>(&*it)) {
        for (auto& [c2, w2] : momentum_times(*p, w, 0)) next.emplace_back(c * c2, std::move(w2));
      } else {
        next.emplace_back(c, insert_commuting(*it, w));
      }
    }
    result = merge(next);
  }
  return result;
}

HybridExpr::HybridExpr(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw ValidationError("expression requires a symbol table");
}

HybridExpr HybridExpr::constant(TablePtr table, Coefficient c) {
  return make_canonical(std::move(table), {Term{std::move(c), {}, {}}});
}

HybridExpr HybridExpr::q(TablePtr table, unsigned mode) {
  return canonicalize(raw(std::move(table), {Term{Coefficient(1), {}, {Position{mode}}}}));
}

HybridExpr HybridExpr::p(TablePtr table, unsigned mode) {
  return canonicalize(raw(std::move(table), {Term{Coefficient(1), {}, {Momentum{mode}}}}));
}

HybridExpr HybridExpr::x(TablePtr table, unsigned dof) {
  ClassicalMonomial m;
  m.x[dof] = 1;
  return canonicalize(raw(std::move(table), {Term{Coefficient(1), m, {}}}));
}

HybridExpr HybridExpr::k(TablePtr table, unsigned dof) {
  ClassicalMonomial m;
  m.k[dof] = 1;
  return canonicalize(raw(std::move(table), {Term{Coefficient(1), m, {}}}));
}

HybridExpr HybridExpr::function(TablePtr table, FuncFactor f) {
  return canonicalize(raw(std::move(table), {Term{Coefficient(1), {}, {std::move(f)}}}));
}

HybridExpr HybridExpr::raw(TablePtr table, std::vector<Term> terms) {
  HybridExpr e(std::move(table));
  for (auto& t : terms) validate_term(t, *e.table_);
  e.terms_ = std::move(terms);
  e.canonical_ = false;
  return e;
}

bool HybridExpr::is_zero() const {
  if (canonical_) return terms_.empty();
  return canonicalize(*this).terms_.empty();
}

HybridExpr make_canonical(TablePtr table, std::vector<Term> terms) {
  std::map<TermKey, Coefficient, TermKeyLess> acc;
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (is_normal_ordered(t.word)) {
      acc[TermKey{std::move(t.classical), std::move(t.word)}] += t.coeff;
      continue;
    }
    for (auto& [c, w] : normal_order(t.word)) {
      acc[TermKey{t.classical, std::move(w)}] += t.coeff * c;
    }
  }
  HybridExpr e(std::move(table));
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    e.terms_.push_back(Term{std::move(c), key.classical, key.word});
  }
  e.canonical_ = true;
  return e;
}

HybridExpr canonicalize(const HybridExpr& e) {
  if (e.canonical_) return e;
  return make_canonical(e.table_, e.terms_);
}

void require_same_table(const HybridExpr& a, const HybridExpr& b) {
  if (!same_table(a.table(), b.table())) {
    throw ValidationError("operands belong to different symbol tables");
  }
}

HybridExpr raw_add(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return HybridExpr::raw(a.table(), std::move(terms));
}

HybridExpr raw_mul(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  std::vector<Term> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Term t{ta.coeff * tb.coeff, ta.classical, ta.word};
      t.classical *= tb.classical;
      t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
      terms.push_back(std::move(t));
    }
  }
  return HybridExpr::raw(a.table(), std::move(terms));
}

HybridExpr raw_scale(const Coefficient& c, const HybridExpr& e) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) t.coeff *= c;
  return HybridExpr::raw(e.table(), std::move(terms));
}

HybridExpr add(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return make_canonical(a.table(), std::move(terms));
}

HybridExpr sub(const HybridExpr& a, const HybridExpr& b) {
  return add(a, scale(Coefficient(-1), b));
}

HybridExpr mul(const HybridExpr& a, const HybridExpr& b) {
  HybridExpr ca = canonicalize(a);
  HybridExpr cb = canonicalize(b);
  HybridExpr product = raw_mul(ca, cb);
  return make_canonical(product.table(), product.terms());
}

HybridExpr scale(const Coefficient& c, const HybridExpr& e) {
  std::vector<Term> terms = canonicalize(e).terms();
  for (auto& t : terms) t.coeff *= c;
  return make_canonical(e.table(), std::move(terms));
}

HybridExpr dagger(const HybridExpr& e) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) {
    t.coeff = t.coeff.conj();
    std::reverse(t.word.begin(), t.word.end());
  }
  return make_canonical(e.table(), std::move(terms));
}

bool equals(const HybridExpr& a, const HybridExpr& b) {
  require_same_table(a, b);
  return canonicalize(a).terms() == canonicalize(b).terms();
}

bool is_hermitian(const HybridExpr& e) { return equals(e, dagger(e)); }

HybridExpr power(const HybridExpr& e, unsigned n) {
  HybridExpr result = HybridExpr::constant(e.table(), Coefficient(1));
  for (unsigned i = 0; i < n; ++i) result = mul(result, e);
  return result;
}

unsigned max_momentum_degree(const HybridExpr& e) {
  unsigned best = 0;
  for (const auto& t : e.terms()) {
    std::map<unsigned, unsigned> counts;
    for (const auto& l : t.word) {
      if (const auto* p = std::get_if<Momentum>(&l)) best = std::max(best, ++counts[p->mode]);
    }
  }
  return best;
}

}  // namespace hqc
