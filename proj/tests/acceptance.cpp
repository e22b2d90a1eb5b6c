// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "hqc/calculus.hpp"
#include "hqc/checks.hpp"
#include "hqc/dsl.hpp"
#include "hqc/oracle.hpp"
#include "hqc/report.hpp"
#include "hqc/scenario.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hqc;
using namespace hqc::testing;

namespace {

constexpr int kSamples = 200;
const BracketKind kAnd = BracketKind::Anderson;
const BracketKind kAlex = BracketKind::Aleksandrov;

TablePtr one_one() {
  static const TablePtr table = make_table(1, 1, {{"V", true}});
  return table;
}

HybridExpr ex(const std::string& text) { return parse(text, one_one()); }

// Accumulates failed expectations with a short description of each.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void expect_eq(const HybridExpr& got, const std::string& want, const std::string& what) {
    expect(pretty(got) == want, what + ": got " + pretty(got) + ", want " + want);
  }
  // Golden value confirmed by the rewrite-free oracle before comparing text.
  void expect_oracle(const HybridExpr& reference, const HybridExpr& got, const std::string& what) {
    expect(oracle::oracle_equal(reference, got), what + ": oracle disagrees");
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ - failed_ << "/" << checks_ << " checks";
    for (const auto& f : failures_) os << "; " << f;
    return os.str();
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

void ac1(Ledger& l) {
  const HybridExpr h = ex("1/2*k*p^2");
  for (BracketKind kind : {kAnd, kAlex}) {
    const std::string tag = to_string(kind);
    l.expect_eq(eom(kind, ex("q"), h), "k*p", tag + " qdot");
    l.expect_eq(eom(kind, ex("x"), h), "1/2*p^2", tag + " xdot");
    l.expect_oracle(oracle::reference_eom(kind, ex("q"), h), ex("k*p"), tag + " qdot");
    l.expect_oracle(oracle::reference_eom(kind, ex("x"), h), ex("1/2*p^2"), tag + " xdot");
  }
}

void ac2(Ledger& l) {
  const HybridExpr h = ex("1/2*k*p^2");
  const HybridExpr a = ex("x*q + q*x");
  const HybridExpr adot = eom(kAnd, a, h);
  l.expect_eq(adot, "q*p^2 + 2*x*k*p", "Adot");
  l.expect_oracle(oracle::reference_eom(kAnd, a, h), adot, "Adot");
  l.expect_eq(hermiticity_defect(adot), "2*i*p", "hermiticity defect");
  const HybridExpr leib = add(leibniz_defect(kAnd, ex("x"), ex("q"), h), leibniz_defect(kAnd, ex("q"), ex("x"), h));
  l.expect_eq(leib, "i*p", "summed Leibniz defect");
}

void ac3(Ledger& l) {
  const HybridExpr h = ex("1/2*k*p^2");
  const HybridExpr a = ex("x*q + q*x");
  const HybridExpr adot = eom(kAlex, a, h);
  l.expect(equals(adot, canonicalize(parse_raw("1/2*p^2*q + 1/2*q*p^2 + 2*x*k*p", one_one()))),
           "Adot equals the Leibniz-route value, got " + pretty(adot));
  l.expect_oracle(oracle::reference_eom(kAlex, a, h), adot, "Adot");
  l.expect(is_hermitian(adot), "Adot hermitian");
  const HybridExpr leib = add(leibniz_defect(kAlex, ex("x"), ex("q"), h), leibniz_defect(kAlex, ex("q"), ex("x"), h));
  l.expect(leib.is_zero(), "summed Leibniz defect is 0, got " + pretty(leib));
}

void ac4(Ledger& l) {
  for (const char* hamiltonian : {"1/2*p^2 + 1/2*k^2 + V(q - x)", "p^2 + 3*k^2 + V(q - x)"}) {
    const HybridExpr h = ex(hamiltonian);
    const std::string tag = std::string("H = ") + hamiltonian;
    for (BracketKind kind : {kAnd, kAlex}) {
      l.expect(eom(kind, ex("p + k"), h).is_zero(), tag + ": p+k conserved under " + to_string(kind));
    }
    const HybridExpr sq = ex("(p + k)^2");
    const HybridExpr witness = eom(kAnd, sq, h);
    l.expect_eq(witness, "-i*V''(q - x)", tag + ": anderson (p+k)^2");
    l.expect_oracle(oracle::reference_eom(kAnd, sq, h), witness, tag);
    l.expect(equals(dagger(witness), scale(Coefficient(-1), witness)), tag + ": witness antihermitian");
    l.expect(eom(kAlex, sq, h).is_zero(), tag + ": aleksandrov (p+k)^2");
    l.expect_oracle(oracle::reference_eom(kAlex, sq, h), HybridExpr::zero(one_one()), tag + ": aleksandrov");
  }
}

void ac5(Ledger& l) {
  const HybridExpr h = ex("x*p^2 + k*q^2");
  const HybridExpr golden = ex("-4*i*q*p - 2");
  l.expect_oracle(oracle::reference_eom(kAnd, h, h), golden, "anderson energy");
  l.expect_eq(eom(kAnd, h, h), "-4*i*q*p - 2", "anderson energy");
  l.expect_oracle(oracle::reference_eom(kAlex, h, h), HybridExpr::zero(one_one()), "aleksandrov energy");
  l.expect(eom(kAlex, h, h).is_zero(), "aleksandrov energy conserved");
}

void ac6(Ledger& l) {
  const TablePtr table = random_table();
  ExprGen gen(table, suite_seed() + 600);
  const Coefficient i = Coefficient::imaginary_unit();
  for (int n = 0; n < kSamples; ++n) {
    const HybridExpr a = gen.canonical();
    const HybridExpr b = gen.canonical();
    l.expect(antisymmetry_defect(kAlex, a, b).is_zero(), "(a) aleksandrov antisymmetry on " + pretty(a));
    l.expect(equals(antisymmetry_defect(kAnd, a, b), scale(i, add(poisson(a, b), poisson(b, a)))),
             "(b) anderson defect identity on " + pretty(a));
    l.expect(equals(dagger(dagger(a)), a), "(c) dagger involution");
    l.expect(equals(dagger(mul(a, b)), mul(dagger(b), dagger(a))), "(c) dagger antihomomorphism");
    for (unsigned d = 1; d <= table->classical_dofs(); ++d) {
      l.expect(equals(pd_x(mul(a, b), d), add(mul(pd_x(a, d), b), mul(a, pd_x(b, d)))), "(d) pd_x Leibniz");
      l.expect(equals(pd_k(mul(a, b), d), add(mul(pd_k(a, d), b), mul(a, pd_k(b, d)))), "(d) pd_k Leibniz");
    }
  }
  GenOptions small;
  small.max_degree = 3;
  small.max_terms = 2;
  for (int n = 0; n < kSamples; ++n) {
    const HybridExpr a = gen.hermitian(small);
    const HybridExpr h = gen.hermitian(small);
    l.expect(is_hermitian(eom(kAlex, a, h)), "(e) hermiticity theorem on A = " + pretty(a));
  }
}

void ac7(Ledger& l) {
  ExprGen gen(random_table(), suite_seed() + 700);
  int with_functions = 0;
  for (int n = 0; n < kSamples; ++n) {
    const HybridExpr e = gen.raw();
    const HybridExpr c = canonicalize(e);
    const auto cfg = oracle::OracleConfig::covering({e, c});
    bool has_function = false;
    for (const auto& t : e.terms()) {
      for (const auto& letter : t.word) has_function = has_function || std::holds_alternative<FuncFactor>(letter);
    }
    with_functions += has_function;
    for (const auto& [name, g] : cfg.func_powers) l.expect(g >= 3, "concretization power " + name);
    l.expect(cfg.max_test_degree >= 4, "test degree");
    l.expect(oracle::oracle_equal(e, c, cfg), "oracle agreement on " + pretty(c));
  }
  l.expect(with_functions >= kSamples / 4, "corpus exercises function nodes");
  const auto cfg = oracle::OracleConfig::covering({});
  l.expect(!oracle::oracle_equal(parse_raw("q*p", one_one()), parse_raw("p*q", one_one()), cfg), "qp vs pq refuted");
  l.expect(oracle::oracle_equal(parse_raw("p*q", one_one()), parse_raw("q*p - i", one_one()), cfg), "pq = qp - i");
  l.expect(!oracle::oracle_equal(parse_raw("p*V(q)", one_one()), parse_raw("V(q)*p", one_one())), "pV vs Vp refuted");
}

void ac8(Ledger& l) {
  const TablePtr table = random_table();
  ExprGen gen(table, suite_seed() + 800);
  for (int n = 0; n < kSamples; ++n) {
    const HybridExpr e = gen.canonical();
    l.expect(equals(parse(pretty(e), table), e), "round trip of " + pretty(e));
  }
  for (const char* name : {"anderson_example1", "momentum_v"}) {
    const std::string text = slurp(scenario_path(std::string(name) + ".json"));
    std::string json[2];
    std::string human[2];
    for (int run = 0; run < 2; ++run) {
      const Scenario s = parse_scenario(text);
      const auto reports = run_checks(s);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        l.expect(s.checks[i].expect != Expectation::None, std::string(name) + " check annotated");
        l.expect(meets_expectation(s.checks[i], reports[i]), std::string(name) + " expectation " + std::to_string(i));
      }
      json[run] = report_to_json(name, s, reports).dump(2);
      human[run] = report_to_text(name, s, reports);
    }
    l.expect(json[0] == json[1] && human[0] == human[1], std::string(name) + " reports byte-identical");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> criteria = {
      {"AC1 example-1 equations of motion, both brackets", ac1},
      {"AC2 anderson eom of xq+qx: value, hermiticity and Leibniz defects", ac2},
      {"AC3 aleksandrov eom of xq+qx: Leibniz-route value, hermitian", ac3},
      {"AC4 momentum example and kinetic independence", ac4},
      {"AC5 energy of xp^2 + kq^2", ac5},
      {"AC6 property suites (a)-(e)", ac6},
      {"AC7 oracle agreement and refutation", ac7},
      {"AC8 round trip and scenario reports", ac8},
  };
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& [label, body] : criteria) {
    Ledger l;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(l);
    } catch (const std::exception& e) {
      l.expect(false, std::string("exception: ") + e.what());
    }
    all = all && l.ok();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (l.ok() ? "PASS " : "FAIL ") << label << " (" << l.summary() << ", " << std::fixed
              << std::setprecision(2) << dt << " s)\n";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s acceptance, %.2f s\n", all ? "PASS" : "FAIL", seconds);
  return all ? 0 : 1;
}
