#include "hqc/errors.hpp"
#include "hqc/oracle.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

#include <doctest.h>

using namespace hqc;
using namespace hqc::oracle;
using namespace hqc::testing;

namespace {

OracleConfig config(unsigned degree, unsigned g) {
  OracleConfig cfg;
  cfg.max_test_degree = degree;
  cfg.func_powers["V"] = g;
  return cfg;
}

PolyState s_power(unsigned t) { return PolyState::monomial({t}); }

}  // namespace

TEST_CASE("concretize_functions") {
  auto cfg = config(4, 3);
  CHECK(equals(concretize_functions(ex("V'(q - x)"), cfg), ex("3*(q - x)^2")));
  CHECK(equals(concretize_functions(ex("V''(q - x)"), cfg), ex("6*(q - x)")));
  CHECK(equals(concretize_functions(ex("V(2*q + k + 1)"), cfg), ex("(2*q + k + 1)^3")));
  CHECK_THROWS_AS(concretize_functions(ex("V''(q - x)"), config(4, 1)), ValidationError);
  CHECK_THROWS_AS(concretize_functions(ex("V''(q - x)"), config(4, 2)), ValidationError);
  CHECK_THROWS_AS(concretize_functions(ex("V(q)"), OracleConfig{}), ValidationError);

  OracleConfig clash;
  clash.func_powers = {{"V", 3}, {"W", 3}};
  CHECK_THROWS_AS(concretize_functions(ex("q"), clash), ValidationError);
}

TEST_CASE("concretization keeps word positions") {
  // V between p's must stay between them; the result is not reordered.
  auto c = concretize_functions(raw("p*V(q)*p"), config(4, 3));
  CHECK_FALSE(c.is_canonical());
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].word.size() == 5);
  CHECK(std::holds_alternative<Momentum>(c.terms()[0].word.front()));
  CHECK(std::holds_alternative<Momentum>(c.terms()[0].word.back()));
}

TEST_CASE("rep_apply") {
  CHECK(rep_apply(ex("q"), s_power(2)) == s_power(3));
  PolyState expected(1);
  expected.add(expected.key({1}), Coefficient(Rational(0), Rational(-2)));
  CHECK(rep_apply(ex("p"), s_power(2)) == expected);
  for (unsigned t = 0; t <= 3; ++t) {
    const HybridExpr comm = raw_add(raw("q*p"), raw_scale(Coefficient(-1), raw("p*q")));
    CHECK(rep_apply(comm, s_power(t)) == rep_apply(ex("i"), s_power(t)));
  }
  CHECK_THROWS_AS(rep_apply(ex("V(q)"), s_power(1)), ValidationError);
}

TEST_CASE("rep_apply carries classical factors") {
  PolyState out = rep_apply(ex("2*x*k^2*q"), s_power(0));
  REQUIRE(out.terms().size() == 1);
  const auto& [key, c] = *out.terms().begin();
  CHECK(out.s_exponent(key, 1) == 1);
  CHECK(out.x_exponent(key, 1) == 1);
  CHECK(out.k_exponent(key, 1) == 2);
  CHECK(out.k_exponent(key, 2) == 0);
  CHECK(c == Coefficient(2));
}

TEST_CASE("oracle_equal") {
  CHECK(oracle_equal(raw("p*q"), raw("q*p - i"), config(4, 3)));
  CHECK_FALSE(oracle_equal(raw("q*p"), raw("p*q"), config(4, 3)));
  CHECK(oracle_equal(raw("p*V(q - x)"), raw("V(q - x)*p - i*V'(q - x)"), config(4, 3)));
  CHECK_FALSE(oracle_equal(raw("p*V(q - x)"), raw("V(q - x)*p"), config(4, 3)));
  CHECK_THROWS_AS(oracle_equal(ex("q"), ex("q", make_table(2, 1)), config(4, 3)), ValidationError);
}

TEST_CASE("oracle completeness at the degree bound") {
  // p^3 and p^3 + p^3*(q*p - p*q - i) agree; q*p^3 vs p^3*q differ, which a
  // test degree of 3 already exposes but degree 0 cannot.
  CHECK_FALSE(oracle_equal(raw("q*p^3"), raw("p^3*q"), config(3, 3)));
  CHECK(oracle_equal(raw("q*p^3"), raw("p^3*q"), config(0, 3)));
  // Differ only on s^3: p^3 kills every state of degree below 3.
  CHECK(oracle_equal(raw("p^3"), raw("0"), config(2, 3)));
  CHECK_FALSE(oracle_equal(raw("p^3"), raw("0"), config(3, 3)));
}

TEST_CASE("representation is a homomorphism") {
  ExprGen gen(random_table(), suite_seed() + 30);
  GenOptions no_functions;
  no_functions.functions = false;
  for (int n = 0; n < 40; ++n) {
    HybridExpr a = gen.raw(no_functions);
    HybridExpr b = gen.raw(no_functions);
    for (std::vector<unsigned> t : {std::vector<unsigned>{0, 0}, {1, 2}, {3, 1}}) {
      PolyState f = PolyState::monomial(t);
      CHECK(rep_apply(mul(a, b), f) == rep_apply(a, rep_apply(b, f)));
    }
  }
}

TEST_CASE("engine equality implies oracle equality") {
  ExprGen gen(random_table(), suite_seed() + 31);
  for (int n = 0; n < 60; ++n) {
    HybridExpr a = gen.raw();
    HybridExpr b = canonicalize(a);
    CHECK(equals(a, b));
    CHECK(oracle_equal(a, b));
    HybridExpr c = gen.raw();
    if (!oracle_equal(a, c)) CHECK_FALSE(equals(a, c));
  }
}

TEST_CASE("lazy concretization matches expanded concretization") {
  ExprGen gen(random_table(), suite_seed() + 32);
  GenOptions small;
  small.max_degree = 3;
  for (int n = 0; n < 40; ++n) {
    HybridExpr e = gen.raw(small);
    auto cfg = OracleConfig::covering({e});
    for (std::vector<unsigned> t : {std::vector<unsigned>{0, 0}, {2, 1}, {4, 4}}) {
      PolyState f = PolyState::monomial(t);
      CHECK(rep_apply(e, f, cfg) == rep_apply(concretize_functions(e, cfg), f));
    }
  }
}
