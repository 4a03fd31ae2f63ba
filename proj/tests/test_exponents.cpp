#include <doctest.h>

#include <stdexcept>

#include "morrey/exponents.hpp"

using namespace morrey;

namespace {

ExponentSet t21() {
  ExponentSet e;
  e.regime = Regime::T21;
  e.n = 1;
  e.alpha = 0.3;
  e.q1 = e.q2 = 1.5;
  e.p = 0.76;
  e.a = 1.2;
  return e.completed();
}

ExponentSet t22() {
  ExponentSet e;
  e.regime = Regime::T22;
  e.n = 1;
  e.alpha = 0.5;
  e.q1 = e.q2 = 3;
  e.p = 1.5;
  e.r1 = e.r2 = 2;
  e.a = 2.75;
  return e.completed();
}

}  // namespace

TEST_CASE("solve_st follows the scaling identities") {
  auto [s, t] = solve_st(1, 0.5, 1.5, 1.0, INFINITY);
  CHECK(s == doctest::Approx(6.0));
  CHECK(t == doctest::Approx(4.0));
  auto [s2, t2] = solve_st(2, 0.5, 2.0, 2.0, 4.0);
  CHECK(1 / s2 == doctest::Approx(0.5 + 0.25 - 0.25));
  CHECK(t2 == doctest::Approx(s2));
  CHECK_THROWS_AS(solve_st(1, 0.6, 2.0, 1.0, INFINITY), std::domain_error);  // 1/s < 0
}

TEST_CASE("completed fills s, t and the default Hoelder pair") {
  const ExponentSet e = t21();
  CHECK(e.s == doctest::Approx(1.0 / (1 / 0.76 - 0.3)));
  CHECK(e.t == doctest::Approx(e.s * 0.75 / 0.76));
  CHECK(e.s < 1.0);
  auto [r1, r2] = default_holder_pair(3.0, 6.0);
  CHECK(r1 == doctest::Approx(1.5));
  CHECK(r2 == doctest::Approx(3.0));
  CHECK(1 / r1 + 1 / r2 == doctest::Approx(1.0));
}

TEST_CASE("valid sets pass and each broken constraint is named") {
  CHECK(validate(t21()).empty());
  CHECK(validate(t22()).empty());

  ExponentSet e = t21();
  e.a = 2.0;
  CHECK(has_violation(validate(e), "1<a<min(q1,q2)"));

  e = t21();
  e.alpha = 0;
  e.s = e.t = ExponentSet::kUnset;
  e = e.completed();
  CHECK(has_violation(validate(e), "0<alpha<n"));

  e = t21();
  e.s = 2.0;  // breaks the defining identity
  CHECK(has_violation(validate(e), "1/s=1/p+1/r-alpha/n"));

  e = t22();
  e.r1 = 3.5;
  CHECK(has_violation(validate(e), "1<r1<q1"));
  CHECK(has_violation(validate(e), "1/r1+1/r2=1"));
}

TEST_CASE("commutator form of T21 restricts t") {
  ExponentSet e = t21();
  e.commutator = true;
  CHECK(validate(e).empty());  // t ~ 0.97
  e.p = 0.5;
  e.q1 = e.q2 = 0.8;  // q = 0.4, t = s q/p = 0.8/1.7
  e.s = e.t = ExponentSet::kUnset;
  e = e.completed();
  CHECK(e.t < 0.5);
  CHECK(has_violation(validate(e), "1/2<=t<=1"));
}

TEST_CASE("Stein-Weiss balance identity") {
  ExponentSet e;
  e.regime = Regime::SW;
  e.n = 1;
  e.alpha = 0.5;
  e.q1 = e.q2 = 1.5;
  e.p1 = e.p2 = 8.0 / 3;
  e.beta = 0.2;
  e.gamma1 = e.gamma2 = -0.1;
  e = e.completed();
  CHECK(e.p == doctest::Approx(4.0 / 3));
  CHECK(e.s == doctest::Approx(4.0));
  CHECK(e.t == doctest::Approx(1.2));
  CHECK(validate(e).empty());
  e.beta = 0.75;
  e.gamma1 = e.gamma2 = -0.375;
  const auto v = validate(e);
  REQUIRE(v.size() == 1);
  CHECK(v[0].constraint == "beta<n/s");
  e.gamma1 = 0;
  CHECK(has_violation(validate(e), "alpha+beta+gamma1+gamma2=n+n/t-n/q"));
}

TEST_CASE("auxiliary indices exist for the configured sets and pass the recheck") {
  for (const ExponentSet& e : {t21(), t22()}) {
    const AuxiliarySearch s = feasible_auxiliary_indices(e);
    REQUIRE(s.witness);
    CHECK(check_auxiliary(e, *s.witness).empty());
  }
}

TEST_CASE("a T22 set with a too small a has no auxiliary indices") {
  ExponentSet e = t22();
  e.a = 1.5;  // needs a > 1 + q_i / r_i' = 2.5
  const AuxiliarySearch s = feasible_auxiliary_indices(e);
  CHECK_FALSE(s.witness);
  CHECK_FALSE(s.empty_interval.empty());
}

TEST_CASE("key round trip") {
  const ExponentSet e = t22();
  const ExponentSet back = ExponentSet::from_keys(e.to_keys());
  CHECK(back.regime == e.regime);
  CHECK(back.alpha == e.alpha);
  CHECK(back.s == doctest::Approx(e.s));
  CHECK(back.r1 == e.r1);
  CHECK(regime_from_string(to_string(Regime::BH)) == Regime::BH);
}
