#include "hqc/checks.hpp"
#include "hqc/errors.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

#include <doctest.h>

using namespace hqc;
using namespace hqc::testing;

namespace {

const BracketKind kAnd = BracketKind::Anderson;
const BracketKind kAlex = BracketKind::Aleksandrov;
const char* kH1 = "1/2*k*p^2";
const char* kH2 = "1/2*p^2 + 1/2*k^2 + V(q - x)";
const char* kH3 = "x*p^2 + k*q^2";

}  // namespace

TEST_CASE("check kind names") {
  for (auto k : {CheckKind::Antisymmetry, CheckKind::Leibniz, CheckKind::HermiticityOfEom,
                 CheckKind::Conservation}) {
    CHECK(parse_check_kind(to_string(k)) == k);
  }
  CHECK(to_string(CheckKind::HermiticityOfEom) == "hermiticity_of_eom");
}

TEST_CASE("antisymmetry_defect") {
  CHECK(antisymmetry_defect(kAlex, ex("x*q"), ex("k*p")).is_zero());
  CHECK(show(antisymmetry_defect(kAnd, ex("x*q"), ex("k*p"))) == "-1");
  CHECK(antisymmetry_defect(kAnd, ex("x"), ex("k")).is_zero());
  CHECK(antisymmetry_defect(BracketKind::Commutator, ex("q*p"), ex(kH2)).is_zero());
}

TEST_CASE("leibniz_defect") {
  const auto h = ex(kH1);
  SUBCASE("aleksandrov per ordering and symmetrized") {
    auto xq = leibniz_defect(kAlex, ex("x"), ex("q"), h);
    auto qx = leibniz_defect(kAlex, ex("q"), ex("x"), h);
    CHECK(show(xq) == "1/2*i*p");
    CHECK(show(qx) == "-1/2*i*p");
    CHECK(add(xq, qx).is_zero());
  }
  SUBCASE("anderson") {
    auto xq = leibniz_defect(kAnd, ex("x"), ex("q"), h);
    auto qx = leibniz_defect(kAnd, ex("q"), ex("x"), h);
    CHECK(show(xq) == "i*p");
    CHECK(qx.is_zero());
    // The gap between the two routes to dA/dt for A = xq + qx.
    auto direct = eom(kAnd, ex("x*q + q*x"), h);
    auto leibniz_route = ex("1/2*p^2*q + x*k*p + k*p*x + 1/2*q*p^2");
    CHECK(equals(sub(direct, leibniz_route), add(xq, qx)));
  }
  SUBCASE("unit factor") {
    for (auto kind : {kAnd, kAlex, BracketKind::Commutator}) {
      CHECK(leibniz_defect(kind, ex("1"), ex("q*p + x"), ex(kH2)).is_zero());
    }
  }
}

TEST_CASE("hermiticity_defect") {
  CHECK(show(hermiticity_defect(eom(kAnd, ex("x*q + q*x"), ex(kH1)))) == "2*i*p");
  CHECK(hermiticity_defect(eom(kAlex, ex("x*q + q*x"), ex(kH1))).is_zero());
  CHECK(show(hermiticity_defect(eom(kAnd, ex("(p + k)^2"), ex(kH2)))) == "-2*i*V''(q - x)");
}

TEST_CASE("conservation_check") {
  auto r = conservation_check(kAnd, ex("p + k"), ex(kH2));
  CHECK(r.passed);
  CHECK(r.defect.is_zero());
  CHECK(r.kind == CheckKind::Conservation);

  r = conservation_check(kAnd, ex("(p + k)^2"), ex(kH2));
  CHECK_FALSE(r.passed);
  CHECK(show(r.defect) == "-i*V''(q - x)");

  r = conservation_check(kAnd, ex(kH3), ex(kH3));
  CHECK_FALSE(r.passed);
  CHECK(show(r.defect) == "-4*i*q*p - 2");
  CHECK(conservation_check(kAlex, ex(kH3), ex(kH3)).passed);

  r = conservation_check(kAnd, ex("q"), ex(kH1), ex("k*p"));
  CHECK(r.passed);
  CHECK(r.inputs.size() == 3);
}

TEST_CASE("defect invariants on random inputs") {
  ExprGen gen(random_table(), suite_seed() + 20);
  for (int n = 0; n < 40; ++n) {
    HybridExpr a = gen.canonical();
    HybridExpr a2 = gen.canonical();
    HybridExpr b = gen.canonical();
    HybridExpr h = gen.hermitian({2, 2});

    HybridExpr d = hermiticity_defect(a);
    CHECK(equals(dagger(d), scale(Coefficient(-1), d)));

    CHECK(equals(antisymmetry_defect(kAnd, a, b),
                 scale(Coefficient::imaginary_unit(), add(poisson(a, b), poisson(b, a)))));

    // Linear in each factor separately.
    CHECK(equals(leibniz_defect(kAnd, add(a, a2), b, h),
                 add(leibniz_defect(kAnd, a, b, h), leibniz_defect(kAnd, a2, b, h))));
    CHECK(equals(leibniz_defect(kAlex, b, add(a, a2), h),
                 add(leibniz_defect(kAlex, b, a, h), leibniz_defect(kAlex, b, a2, h))));

    auto report = conservation_check(kAnd, a, h);
    CHECK(report.passed == report.defect.is_zero());
  }
}
