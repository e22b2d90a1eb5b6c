#include "hqc/oracle.hpp"

#include "hqc/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hqc::oracle {

namespace {

std::weak_ordering compare_exps(const std::map<unsigned, unsigned>& a,
                                const std::map<unsigned, unsigned>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

// Commutative polynomial in q's and classical variables.
struct CommKey {
  std::map<unsigned, unsigned> q;
  ClassicalMonomial classical;
};

struct CommKeyLess {
  bool operator()(const CommKey& a, const CommKey& b) const {
    if (auto c = compare_exps(a.q, b.q); c != 0) return c < 0;
    if (auto c = compare_exps(a.classical.x, b.classical.x); c != 0) return c < 0;
    return compare_exps(a.classical.k, b.classical.k) < 0;
  }
};

using CommPoly = std::map<CommKey, Rational, CommKeyLess>;

CommPoly comm_mul(const CommPoly& a, const CommPoly& b) {
  CommPoly out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      CommKey key = ka;
      for (const auto& [m, e] : kb.q) key.q[m] += e;
      key.classical *= kb.classical;
      out[key] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

CommPoly linear_poly(const LinearArg& arg) {
  CommPoly out;
  for (const auto& [m, c] : arg.q) {
    CommKey key;
    key.q[m] = 1;
    out[key] += c;
  }
  for (const auto& [d, c] : arg.x) {
    CommKey key;
    key.classical.x[d] = 1;
    out[key] += c;
  }
  for (const auto& [d, c] : arg.k) {
    CommKey key;
    key.classical.k[d] = 1;
    out[key] += c;
  }
  if (arg.constant != 0) out[CommKey{}] += arg.constant;
  return out;
}

CommPoly concretize_letter(const FuncFactor& f, unsigned g) {
  Rational falling(1);
  for (unsigned j = 0; j < f.deriv_order; ++j) falling *= Rational(g - j);
  CommPoly result{{CommKey{}, falling}};
  const CommPoly base = linear_poly(f.arg);
  for (unsigned j = 0; j < g - f.deriv_order; ++j) result = comm_mul(result, base);
  return result;
}

unsigned power_for(const FuncFactor& f, const SymbolTable& table, const OracleConfig& cfg) {
  const std::string& name = table.function_name(f.symbol);
  auto it = cfg.func_powers.find(name);
  if (it == cfg.func_powers.end()) {
    throw ValidationError("oracle: no concretization power configured for function '" + name + "'");
  }
  if (it->second <= f.deriv_order) {
    throw ValidationError("oracle: power " + std::to_string(it->second) + " for '" + name +
                          "' must exceed derivative order " + std::to_string(f.deriv_order));
  }
  return it->second;
}

void validate_config(const OracleConfig& cfg) {
  std::set<unsigned> seen;
  for (const auto& [name, g] : cfg.func_powers) {
    if (g == 0) throw ValidationError("oracle: power for '" + name + "' must be positive");
    if (!seen.insert(g).second) {
      throw ValidationError("oracle: distinct function symbols need distinct powers");
    }
  }
}

void for_each_test_state(unsigned modes, unsigned degree,
                         const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> t(modes, 0);
  while (true) {
    if (!visit(t)) return;
    std::size_t i = 0;
    while (i < modes && t[i] == degree) t[i++] = 0;
    if (i == modes) return;
    ++t[i];
  }
}

}  // namespace

PolyState PolyState::monomial(std::vector<unsigned> exponents) {
  PolyState out(static_cast<unsigned>(exponents.size()));
  out.terms_.emplace(std::move(exponents), Coefficient(1));
  return out;
}

PolyState::Key PolyState::key(std::vector<unsigned> s, const ClassicalMonomial& m) const {
  if (s.size() != modes_) throw ValidationError("oracle: state key needs one exponent per mode");
  Key k = std::move(s);
  for (const auto& [d, e] : m.x) raise(k, x_slot(d), e);
  for (const auto& [d, e] : m.k) raise(k, k_slot(d), e);
  return k;
}

unsigned PolyState::s_exponent(const Key& key, unsigned mode) const { return at(key, mode - 1); }
unsigned PolyState::x_exponent(const Key& key, unsigned dof) const { return at(key, x_slot(dof)); }
unsigned PolyState::k_exponent(const Key& key, unsigned dof) const { return at(key, k_slot(dof)); }

void PolyState::raise(Key& key, std::size_t slot, unsigned by) const {
  if (by == 0) return;
  if (key.size() <= slot) key.resize(slot + 1, 0);
  key[slot] += by;
}

void PolyState::add(const Key& key, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyState PolyState::shifted(std::size_t slot) const {
  PolyState out(modes_);
  for (const auto& [key, c] : terms_) {
    Key k = key;
    raise(k, slot, 1);
    out.terms_.emplace_hint(out.terms_.end(), std::move(k), c);
  }
  return out;
}

PolyState PolyState::times_s(unsigned mode) const {
  if (mode == 0 || mode > modes_) throw ValidationError("oracle: mode out of range");
  return shifted(mode - 1);
}

PolyState PolyState::times_x(unsigned dof) const { return shifted(x_slot(dof)); }
PolyState PolyState::times_k(unsigned dof) const { return shifted(k_slot(dof)); }

PolyState PolyState::momentum(unsigned mode) const {
  if (mode == 0 || mode > modes_) throw ValidationError("oracle: mode out of range");
  PolyState out(modes_);
  for (const auto& [key, c] : terms_) {
    const unsigned e = key[mode - 1];
    if (e == 0) continue;
    Key k = key;
    --k[mode - 1];
    out.add(k, c * Coefficient(Rational(0), Rational(-static_cast<long long>(e))));
  }
  return out;
}

PolyState PolyState::times(const PolyState& m) const {
  PolyState out(modes_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : m.terms_) {
      Key k = ka.size() >= kb.size() ? ka : kb;
      const Key& other = ka.size() >= kb.size() ? kb : ka;
      for (std::size_t i = 0; i < other.size(); ++i) k[i] += other[i];
      out.add(k, ca * cb);
    }
  }
  return out;
}

PolyState PolyState::times(const Coefficient& c, const ClassicalMonomial& m) const {
  PolyState out(modes_);
  if (c.is_zero()) return out;
  for (const auto& [key, value] : terms_) {
    Key k = key;
    for (const auto& [d, e] : m.x) raise(k, x_slot(d), e);
    for (const auto& [d, e] : m.k) raise(k, k_slot(d), e);
    out.add(k, value * c);
  }
  return out;
}

OracleConfig OracleConfig::covering(const std::vector<HybridExpr>& exprs) {
  OracleConfig cfg;
  std::map<std::size_t, unsigned> max_deriv;
  for (const auto& e : exprs) {
    cfg.max_test_degree = std::max(cfg.max_test_degree, max_momentum_degree(e));
    for (const auto& t : e.terms()) {
      for (const auto& l : t.word) {
        if (const auto* f = std::get_if<FuncFactor>(&l)) {
          max_deriv[f->symbol] = std::max(max_deriv[f->symbol], f->deriv_order);
        }
      }
    }
  }
  if (exprs.empty()) return cfg;
  const auto& functions = exprs.front().table()->functions();
  unsigned next = 3;
  for (std::size_t id = 0; id < functions.size(); ++id) {
    unsigned g = std::max(next, max_deriv[id] + 1);
    cfg.func_powers[functions[id].name] = g;
    next = g + 1;
  }
  return cfg;
}

HybridExpr concretize_functions(const HybridExpr& e, const OracleConfig& cfg) {
  validate_config(cfg);
  const SymbolTable& table = *e.table();
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    std::vector<Term> partial{Term{t.coeff, t.classical, {}}};
    for (const auto& letter : t.word) {
      const auto* f = std::get_if<FuncFactor>(&letter);
      if (!f) {
        for (auto& p : partial) p.word.push_back(letter);
        continue;
      }
      const CommPoly poly = concretize_letter(*f, power_for(*f, table, cfg));
      std::vector<Term> next;
      for (const auto& p : partial) {
        for (const auto& [key, c] : poly) {
          Term n = p;
          n.coeff *= Coefficient(c);
          n.classical *= key.classical;
          for (const auto& [m, exp] : key.q) {
            for (unsigned j = 0; j < exp; ++j) n.word.push_back(Position{m});
          }
          next.push_back(std::move(n));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return HybridExpr::raw(e.table(), std::move(out));
}

namespace {

// arg * f, with arg read as a commutative linear form in s and the classical variables.
PolyState times_linear(const PolyState& f, const LinearArg& arg) {
  PolyState out(f.modes());
  auto accumulate = [&](const PolyState& part) {
    for (const auto& [key, c] : part.terms()) out.add(key, c);
  };
  for (const auto& [m, c] : arg.q) accumulate(f.times_s(m).times(Coefficient(c), {}));
  for (const auto& [d, c] : arg.x) accumulate(f.times_x(d).times(Coefficient(c), {}));
  for (const auto& [d, c] : arg.k) accumulate(f.times_k(d).times(Coefficient(c), {}));
  if (arg.constant != 0) accumulate(f.times(Coefficient(arg.constant), {}));
  return out;
}

// A term as a right-to-left sequence of momentum derivatives and
// multiplication operators. Adjacent q's and concretized functions commute,
// so each run is multiplied out once and reused for every test state.
struct Step {
  unsigned momentum_mode = 0;  // 0: multiply by factor
  PolyState factor;
};

std::vector<Step> compile(const Term& t, unsigned modes, const SymbolTable& table, const OracleConfig* cfg) {
  std::vector<Step> steps;
  PolyState factor = PolyState::monomial(std::vector<unsigned>(modes, 0));
  for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
    if (const auto* q = std::get_if<Position>(&*it)) {
      factor = factor.times_s(q->mode);
    } else if (const auto* p = std::get_if<Momentum>(&*it)) {
      steps.push_back({0, std::move(factor)});
      steps.push_back({p->mode, PolyState(modes)});
      factor = PolyState::monomial(std::vector<unsigned>(modes, 0));
    } else if (cfg) {
      const auto& f = std::get<FuncFactor>(*it);
      const unsigned g = power_for(f, table, *cfg);
      Rational falling(1);
      for (unsigned j = 0; j < f.deriv_order; ++j) falling *= Rational(g - j);
      factor = factor.times(Coefficient(falling), {});
      for (unsigned j = 0; j < g - f.deriv_order; ++j) factor = times_linear(factor, f.arg);
    } else {
      throw ValidationError("oracle: concretize function letters before applying");
    }
  }
  steps.push_back({0, factor.times(t.coeff, t.classical)});
  return steps;
}

using Program = std::vector<std::vector<Step>>;

Program compile(const HybridExpr& e, const OracleConfig* cfg) {
  Program program;
  for (const auto& t : e.terms()) {
    program.push_back(compile(t, e.table()->quantum_modes(), *e.table(), cfg));
  }
  return program;
}

PolyState run(const Program& program, const PolyState& f) {
  PolyState result(f.modes());
  for (const auto& steps : program) {
    PolyState state = f;
    for (const auto& step : steps) {
      if (state.is_zero()) break;
      state = step.momentum_mode ? state.momentum(step.momentum_mode) : state.times(step.factor);
    }
    for (const auto& [key, c] : state.terms()) result.add(key, c);
  }
  return result;
}

PolyState apply(const HybridExpr& e, const PolyState& f, const OracleConfig* cfg) {
  return run(compile(e, cfg), f);
}

}  // namespace

PolyState rep_apply(const HybridExpr& e, const PolyState& f) { return apply(e, f, nullptr); }

PolyState rep_apply(const HybridExpr& e, const PolyState& f, const OracleConfig& cfg) {
  validate_config(cfg);
  return apply(e, f, &cfg);
}

bool oracle_equal(const HybridExpr& a, const HybridExpr& b, const OracleConfig& cfg) {
  require_same_table(a, b);
  validate_config(cfg);
  const Program pa = compile(a, &cfg);
  const Program pb = compile(b, &cfg);
  bool equal = true;
  for_each_test_state(a.table()->quantum_modes(), cfg.max_test_degree,
                      [&](const std::vector<unsigned>& t) {
                        const PolyState state = PolyState::monomial(t);
                        equal = run(pa, state) == run(pb, state);
                        return equal;
                      });
  return equal;
}

bool oracle_equal(const HybridExpr& a, const HybridExpr& b) {
  return oracle_equal(a, b, OracleConfig::covering({a, b}));
}

HybridExpr reference_dagger(const HybridExpr& e) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) {
    t.coeff = t.coeff.conj();
    std::reverse(t.word.begin(), t.word.end());
  }
  return HybridExpr::raw(e.table(), std::move(terms));
}

namespace {

HybridExpr raw_sub(const HybridExpr& a, const HybridExpr& b) {
  return raw_add(a, raw_scale(Coefficient(-1), b));
}

HybridExpr reference_poisson(const HybridExpr& a, const HybridExpr& b) {
  HybridExpr result = HybridExpr::raw(a.table(), {});
  for (unsigned d = 1; d <= a.table()->classical_dofs(); ++d) {
    result = raw_add(result, raw_sub(raw_mul(detail::pd_x_raw(a, d), detail::pd_k_raw(b, d)),
                                     raw_mul(detail::pd_k_raw(a, d), detail::pd_x_raw(b, d))));
  }
  return result;
}

}  // namespace

HybridExpr reference_bracket(BracketKind kind, const HybridExpr& a, const HybridExpr& b) {
  const HybridExpr comm = raw_sub(raw_mul(a, b), raw_mul(b, a));
  const Coefficient half_i(Rational(0), Rational(1, 2));
  switch (kind) {
    case BracketKind::Commutator:
      return comm;
    case BracketKind::Poisson:
      return reference_poisson(a, b);
    case BracketKind::Anderson:
      return raw_add(comm, raw_scale(Coefficient::imaginary_unit(), reference_poisson(a, b)));
    case BracketKind::Aleksandrov:
      return raw_add(comm, raw_sub(raw_scale(half_i, reference_poisson(a, b)),
                                   raw_scale(half_i, reference_poisson(b, a))));
  }
  throw ValidationError("unknown bracket kind");
}

HybridExpr reference_eom(BracketKind kind, const HybridExpr& a, const HybridExpr& h) {
  if (kind == BracketKind::Poisson) throw ValidationError("poisson is not a dynamical bracket");
  return raw_scale(-Coefficient::imaginary_unit(), reference_bracket(kind, a, h));
}

}  // namespace hqc::oracle
