#include "doctest.h"
#include "support.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();
const RingExpr ZB = RingExpr::base(Z);

RingExpr loc(const RingExpr& e, const AlgPrime& p) { return RingExpr::localize(e, PrimeRef::of(p)); }
RingExpr cpl(const RingExpr& e, const AlgPrime& p) { return RingExpr::complete(e, PrimeRef::of(p)); }
RingExpr zp_hat(const AlgPrime& p) { return cpl(loc(ZB, p), p); }

}  // namespace

TEST_CASE("element strings round trip") {
  for (const char* s : {"0", "-3", "-1/2", "x^2*y-3*x+1", "x-1", "y"}) CHECK(parse_poly(s).str() == s);
  CHECK(parse_poly("2*x + 3*x").str() == "5*x");
  CHECK(parse_poly("7", 5).str() == "2");
  CHECK_THROWS_AS(parse_poly("x+"), Error);
  CHECK_THROWS_AS(parse_poly("q"), Error);
}

TEST_CASE("integer arithmetic") {
  CHECK(gcd(Int(12), Int(18)) == 6);
  CHECK(valuation(Int(48), Int(2)) == 4);
  CHECK(prime_factors(Int(360)) == std::vector<Int>{2, 3, 5});
  CHECK(is_prime(Int(97)));
  CHECK_FALSE(is_prime(Int(91)));
  auto [q, r] = udivmod(parse_poly("x^3-1"), parse_poly("x-1"));
  CHECK(q.str() == "x^2+x+1");
  CHECK(r.is_zero());
  const UExtGcd g = uextgcd(parse_poly("x^2-1"), parse_poly("x-1"));
  CHECK(g.g.str() == "x-1");
  CHECK((g.s * parse_poly("x^2-1") + g.t * parse_poly("x-1")) == g.g);
}

TEST_CASE("base rings") {
  CHECK(Z.key() == "Z");
  CHECK(BaseRing::semilocal_integers({3, 2}).key() == "Z_(2,3)");
  CHECK(BaseRing::prime_field(5).key() == "F_5");
  CHECK(BaseRing::univariate(0).key() == "Q[x]");
  CHECK(BaseRing::bivariate(7).key() == "F_7[x,y]");
  CHECK(BaseRing::bivariate(0).krull_dim() == 2);
  CHECK(BaseRing::rationals().krull_dim() == 0);
  CHECK_THROWS_AS(BaseRing::prime_field(6), Error);
  CHECK_THROWS_AS(BaseRing::semilocal_integers({4}), Error);
}

TEST_CASE("prime ideals are verified") {
  const BaseRing kx = BaseRing::univariate(0), kxy = BaseRing::bivariate(0);
  CHECK(prime(Z, {"-7"}).key() == "(7)");
  CHECK(AlgPrime::zero(Z).dim() == 1);
  CHECK(prime(Z, {"5"}).is_maximal());
  CHECK(prime(kx, {"x^2+1"}).key() == "(x^2+1)");
  CHECK(prime(kxy, {"x", "y"}).dim() == 0);
  CHECK(prime(kxy, {"x"}).dim() == 1);
  CHECK(prime(kxy, {"x", "y"}).contains(prime(kxy, {"x"})));
  CHECK_FALSE(prime(kxy, {"x"}).contains(prime(kxy, {"x", "y"})));
  CHECK_THROWS_AS(prime(Z, {"4"}), Error);
  CHECK_THROWS_AS(prime(kx, {"x^2-1"}), Error);
  CHECK_THROWS_AS(prime(kxy, {"x*y"}), Error);
  CHECK(comaximal(prime(Z, {"2"}), prime(Z, {"3"})));
  CHECK_FALSE(comaximal(prime(kxy, {"x"}), prime(kxy, {"x", "y"})));
}

TEST_CASE("unit certificates") {
  const AlgPrime p2 = prime(Z, {"2"});
  UnitCertificate u = is_unit(Z.element("3"), loc(ZB, p2));
  CHECK(u.verdict == UnitVerdict::Unit);
  CHECK(u.witness == "3 ∉ (2)");
  u = is_unit(Z.element("2"), zp_hat(p2));
  CHECK(u.verdict == UnitVerdict::NonUnit);

  const BaseRing kxy = BaseRing::bivariate(0);
  u = is_unit(kxy.element("x+1"), loc(RingExpr::base(kxy), prime(kxy, {"x", "y"})));
  CHECK(u.verdict == UnitVerdict::Unit);
  CHECK(u.witness == "x+1 ∉ (x,y)");
  u = is_unit(kxy.element("x+y"), loc(RingExpr::base(kxy), prime(kxy, {"x", "y"})));
  CHECK(u.verdict == UnitVerdict::NonUnit);
  CHECK(is_unit(Z.element("2"), RingExpr::zero(Z)).verdict == UnitVerdict::Unit);
  CHECK(is_unit(Z.element("0"), loc(ZB, AlgPrime::zero(Z))).verdict == UnitVerdict::Zero);
}

TEST_CASE("rewrite rules") {
  const AlgPrime p2 = prime(Z, {"2"}), z0 = AlgPrime::zero(Z);
  CHECK(rewrite(cpl(ZB, z0)) == ZB);
  CHECK(rewrite(loc(zp_hat(p2), p2)) == rewrite(zp_hat(p2)));
  CHECK(rewrite(cpl(zp_hat(p2), p2)) == rewrite(zp_hat(p2)));
  CHECK(rewrite(loc(RingExpr::zero(Z), p2)).is_zero());
  // Localize at the smaller prime wins.
  CHECK(rewrite(loc(loc(ZB, p2), z0)) == rewrite(loc(ZB, z0)));
  // Complete at a maximal ideal is written over the localization.
  CHECK(rewrite(cpl(ZB, p2)) == rewrite(zp_hat(p2)));
  const RingExpr prod = RingExpr::product({zp_hat(p2), zp_hat(prime(Z, {"3"}))});
  CHECK(rewrite(loc(prod, z0)).kind() == ExprKind::FiniteProduct);
}

TEST_CASE("kills under Koszul objects") {
  const AlgPrime p2 = prime(Z, {"2"}), p3 = prime(Z, {"3"}), p5 = prime(Z, {"5"});
  PrimeFamily closed;
  closed.dim = 0;
  const RingExpr tmpl = RingExpr::complete(RingExpr::localize(ZB, PrimeRef::var(0)), PrimeRef::var(0));
  const RingExpr fam = RingExpr::family(tmpl, closed);
  KillResult k = kill_under_koszul(fam, p2);
  CHECK_FALSE(k.infinite);
  CHECK(k.expr == rewrite(zp_hat(p2)));
  REQUIRE(k.survivors.size() == 1);
  CHECK(k.survivors[0] == p2);
  // Spot checks of the killed factors: p is a unit in Z_q^∧ for q != p.
  for (const auto& q : {p3, p5}) {
    CHECK(kill_under_koszul(zp_hat(q), p2).expr.is_zero());
    CHECK(is_unit(Z.element("2"), zp_hat(q)).verdict == UnitVerdict::Unit);
  }
  CHECK(kill_under_koszul(RingExpr::base(BaseRing::rationals()), AlgPrime::zero(BaseRing::rationals())).expr ==
        RingExpr::base(BaseRing::rationals()));
}

TEST_CASE("relevant primes") {
  const AlgPrime p2 = prime(Z, {"2"}), p3 = prime(Z, {"3"});
  PrimeFamily closed;
  closed.dim = 0;
  const RingExpr fam = RingExpr::family(RingExpr::complete(RingExpr::localize(ZB, PrimeRef::var(0)), PrimeRef::var(0)), closed);
  CHECK(relevant_primes(fam, {p2}).primes == std::vector<AlgPrime>{p2});
  CHECK(relevant_primes(loc(ZB, AlgPrime::zero(Z)), {p2}).primes.empty());
  const RingExpr prod = RingExpr::product({zp_hat(p2), zp_hat(p3)});
  CHECK(relevant_primes(prod, {p2, p3}).primes == std::vector<AlgPrime>{p2, p3});
}

TEST_CASE("structural maps and carrier tensors") {
  const AlgPrime p2 = prime(Z, {"2"}), z0 = AlgPrime::zero(Z);
  CHECK(maps_to(ZB, loc(ZB, z0)));
  CHECK(maps_to(loc(ZB, p2), zp_hat(p2)));
  CHECK_FALSE(maps_to(loc(ZB, z0), ZB));
  CHECK(maps_to(zp_hat(p2), RingExpr::zero(Z)));
  CHECK(carrier_tensor(ZB, loc(ZB, p2)) == loc(ZB, p2));
  CHECK(localize_at(zp_hat(p2), z0) == rewrite(loc(zp_hat(p2), z0)));
}

TEST_CASE("expression keys are canonical") {
  const AlgPrime p2 = prime(Z, {"2"});
  CHECK(zp_hat(p2).key() == "Cpl[(2)](Loc[(2)](Z))");
  PrimeFamily closed;
  closed.dim = 0;
  const RingExpr fam = RingExpr::family(RingExpr::complete(RingExpr::localize(ZB, PrimeRef::var(0)), PrimeRef::var(0)), closed);
  CHECK(fam.key() == "FamProd[dim=0]{Cpl[$0](Loc[$0](Z))}");
  CHECK(fam.has_family());
  CHECK(instantiate(fam.child(), p2) == zp_hat(p2));
}
