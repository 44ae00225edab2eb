#include "doctest.h"
#include "support.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();
const AlgPrime P2 = AlgPrime::parse(Z, {"2"});
const AlgPrime Z0 = AlgPrime::zero(Z);

BoundedComplex rationals_complex() { return over(BoundedComplex::unit(Z), RingExpr::localize(RingExpr::base(Z), PrimeRef::of(Z0))); }

std::vector<std::string> report(const std::vector<GammaDegree>& g) {
  std::vector<std::string> out;
  for (const auto& d : g) out.push_back(d.str());
  return out;
}

std::vector<std::string> nonzero(const BoundedComplex& c) {
  std::vector<std::string> out;
  for (const auto& h : homology(c))
    if (!h.zero) out.push_back(std::to_string(h.degree) + ":" + h.str());
  return out;
}

}  // namespace

TEST_CASE("Koszul objects") {
  const BoundedComplex k = koszul(KoszulData::of(P2));
  CHECK(k.lo() == -1);
  CHECK(nonzero(k) == std::vector<std::string>{"0:Z/(2)"});
  const BoundedComplex u = koszul(KoszulData::of(Z0));
  CHECK(u.total_rank() == 1);
  CHECK(nonzero(u) == std::vector<std::string>{"0:Z"});

  const BaseRing r = BaseRing::bivariate(0);
  const AlgPrime m = prime(r, {"x", "y"});
  const BoundedComplex kxy = koszul(KoszulData::of(m));
  CHECK(kxy.total_rank() == 4);
  const auto hs = homology(kxy);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0].zero);
  CHECK(hs[1].zero);
  CHECK(hs[2].hilbert.at(0) == 1);
  CHECK(hs[2].hilbert.at(1) == 0);
  CHECK_THROWS_AS(KoszulData::with(m, {r.element("x")}), Error);
}

TEST_CASE("local cohomology") {
  CHECK(report(gamma_report(P2, BoundedComplex::unit(Z))) == std::vector<std::string>{"H^1: Z[1/2]/Z"});
  CHECK(report(gamma_report(P2, cyclic(Z, "2"))) == std::vector<std::string>{"H^0: Z/(2)"});
  CHECK(report(gamma_report(P2, cyclic(Z, "12"))) == std::vector<std::string>{"H^0: Z/(4)"});
  CHECK(gamma_report(P2, rationals_complex()).empty());
  CHECK(gamma_report(P2, cyclic(Z, "3")).empty());
  // The complex itself: Z -> Z[1/2] has no H^0 and is not acyclic.
  const BoundedComplex g = gamma(P2, BoundedComplex::unit(Z));
  CHECK(g.lo() == 0);
  CHECK_FALSE(is_acyclic(g));
  CHECK(is_acyclic(gamma(P2, rationals_complex())));
  const BoundedComplex g2 = gamma(P2, cyclic(Z, "2"));
  CHECK(is_quasi_iso(gamma_counit(g2, cyclic(Z, "2"))));
}

TEST_CASE("localization") {
  CHECK(nonzero(localize(P2, BoundedComplex::unit(Z))) == std::vector<std::string>{"0:Z_(2)"});
  CHECK(nonzero(localize(Z0, cyclic(Z, "2"))).empty());
  CHECK(nonzero(localize(P2, cyclic(Z, "3"))).empty());
  CHECK(nonzero(localize(P2, cyclic(Z, "6"))) == std::vector<std::string>{"0:Z_(2)/(2)"});
}

TEST_CASE("completion through towers") {
  const TowerReport t = completion_tower(P2, BoundedComplex::unit(Z));
  CHECK(t.stable);
  CHECK(t.str() == "Λ_(2): H^0: rank 1");
  CHECK(nonzero(complete(P2, BoundedComplex::unit(Z))) == std::vector<std::string>{"0:Z_(2)^∧"});
  CHECK(completion_tower(P2, rationals_complex()).zero());
  CHECK(complete(P2, rationals_complex()).empty());
  CHECK(completion_tower(P2, cyclic(Z, "12")).str() == "Λ_(2): H^0: /(4)");
  const BoundedComplex c6 = cyclic(Z, "6");
  CHECK(complete(Z0, c6).str() == c6.str());
}

TEST_CASE("stabilization window") {
  const int old = tower_window();
  set_tower_window(6);
  CHECK(tower_window() == 6);
  CHECK(completion_tower(P2, BoundedComplex::unit(Z)).stable);
  set_tower_window(old);
  CHECK(tower_window() == kTowerWindow);
}

TEST_CASE("the V functor") {
  const BaseRing z2 = BaseRing::semilocal_integers({2});
  const VResult v2 = v_functor(prime(z2, {"2"}), cyclic(z2, "2"));
  CHECK_FALSE(v2.zero);
  CHECK(v2.description == "V_(2): H^0: /(2)");
  const VResult vq = v_functor(Z0, rationals_complex());
  CHECK(vq.description == "V_(0): H^0: rank 1");
  const VResult vz = v_functor(Z0, BoundedComplex::unit(Z));
  CHECK_FALSE(vz.zero);
  CHECK_FALSE(vz.tower.stable);
}

TEST_CASE("support and cosupport") {
  const SpectrumPoset p = z_poset({"2", "3"});
  CHECK(primes_str(support(cyclic(Z, "6"), p).support) == "{(2),(3)}");
  CHECK(primes_str(support(BoundedComplex::unit(Z), p).support) == "{(0),(2),(3)}");
  const SupportReport s = support_and_cosupport(cyclic(Z, "2"), p);
  CHECK(primes_str(s.cosupport) == "{(2)}");
  CHECK(s.undecided.empty());
  CHECK(cosupport_at(P2, cyclic(Z, "2")));
  CHECK_FALSE(cosupport_at(prime(Z, {"3"}), cyclic(Z, "2")));
  const SupportReport e = support(cyclic(Z, "1"), p);
  CHECK(e.support.empty());
  CHECK(e.acyclic);
}

TEST_CASE("dimension filtration") {
  const SpectrumPoset p = z_poset({"2"});
  const DimFiltration f = dim_filtration(BoundedComplex::unit(Z), 0, p);
  CHECK(f.generators.size() == 1);
  // M_{<=0} = Γ_(2) Z and M_{>=1} ≃ Z[1/2]: supports (2) and (0).
  CHECK(primes_str(support(f.low, p).support) == "{(2)}");
  CHECK(primes_str(support(f.high, p).support) == "{(0)}");
  CHECK(report(gamma_report(P2, BoundedComplex::unit(Z))) == std::vector<std::string>{"H^1: Z[1/2]/Z"});

  const DimFiltration t = dim_filtration(cyclic(Z, "2"), 0, p);
  CHECK(is_acyclic(t.high));
  CHECK(is_quasi_iso(t.to_m));

  const DimFiltration q = dim_filtration(rationals_complex(), 0, p);
  CHECK(is_acyclic(q.low));
}
