#include "doctest.h"
#include "support.hpp"

#include "adelic/verifier.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();

std::vector<std::string> plan_names(const ReductionPlan& p) {
  std::vector<std::string> out;
  for (const auto& t : p.tests) out.push_back(t.name() + " " + t.origin);
  return out;
}

}  // namespace

TEST_CASE("Hasse square for Z is a pullback") {
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2", "3", "5"}));
  const VerificationReport r = verify_pullback(c);
  CHECK(r.verdict == Verdict::Pullback);
  CHECK(plan_names(r.plan) == std::vector<std::string>{"K_(2) declared", "K_(3) declared", "K_(5) declared",
                                                       "K_(7) representative", "L_(0) generic"});
  CHECK(r.plan.covers);
  REQUIRE(r.tests.size() == 5);
  for (const auto& t : r.tests) CHECK(t.acyclic());
  CHECK(r.witness.empty());
  CHECK(r.omitted.empty());
}

TEST_CASE("entries of M add closed points") {
  const VerificationReport r = verify_pullback(build_adelic_cube(cyclic(Z, "10"), z_poset({"2"})));
  CHECK(r.verdict == Verdict::Pullback);
  CHECK(plan_names(r.plan) == std::vector<std::string>{"K_(2) declared", "K_(5) entry", "K_(3) representative",
                                                       "L_(0) generic"});
  CHECK(verify_pullback(build_adelic_cube(cyclic(Z, "6"), z_poset({"2", "3"}))).verdict == Verdict::Pullback);
}

TEST_CASE("replacing a completion by a quotient is detected") {
  const CubeDiagram c = build_quotient_corrupted(BoundedComplex::unit(Z), z_poset({"2", "3", "5"}), prime(Z, {"3"}));
  const VerificationReport r = verify_pullback(c);
  CHECK(r.verdict == Verdict::NotPullback);
  CHECK(r.witness == "K_(3): Z_(3)/(3)");
  CHECK(verdict_exit_code(r.verdict) == 2);
}

TEST_CASE("full spectra with finitely many primes") {
  const BaseRing z2 = BaseRing::semilocal_integers({2});
  const VerificationReport r = verify_pullback(build_adelic_cube(BoundedComplex::unit(z2), SpectrumPoset::full(z2)));
  CHECK(r.verdict == Verdict::Pullback);
  CHECK(r.plan.tests.size() == 2);
  const BaseRing q = BaseRing::rationals();
  const VerificationReport rq = verify_pullback(build_adelic_cube(BoundedComplex::unit(q), SpectrumPoset::full(q)));
  CHECK(rq.verdict == Verdict::Pullback);
  CHECK(rq.plan.tests.size() == 1);
}

TEST_CASE("k[x,y] chain is only a relative pullback") {
  const SpectrumPoset p = kxy_chain();
  const VerificationReport r = verify_pullback(build_adelic_cube(BoundedComplex::unit(p.ring()), p));
  CHECK(r.verdict == Verdict::RelativePullback);
  CHECK(r.omitted == std::vector<std::string>{"K_(x): primes p of dim 0 with p ⊇ (x), p ∉ {(x,y)}"});
  CHECK(plan_names(r.plan) == std::vector<std::string>{"K_(x,y) declared", "K_(x-1,y-1) representative",
                                                       "K_(x) declared", "L_(0) generic"});
  CHECK(verdict_exit_code(r.verdict) == 3);
}

TEST_CASE("a sign corruption is caught before homology") {
  const SpectrumPoset p = kxy_chain();
  CubeDiagram c = build_adelic_cube(BoundedComplex::unit(p.ring()), p);
  corrupt_sign(c, Flag::make({2, 1, 0}), 1, 0);
  const VerificationReport r = verify_pullback(c);
  CHECK(r.verdict == Verdict::NotPullback);
  CHECK(r.witness.rfind("cochain law at (2>1>0)", 0) == 0);
  CHECK(r.tests.empty());
}

TEST_CASE("Beilinson-Parshin comparison") {
  const BaseRing z2 = BaseRing::semilocal_integers({2});
  const BpReport a = verify_bp_equivalence(BoundedComplex::unit(z2), SpectrumPoset::full(z2));
  CHECK(a.equivalent);
  CHECK(a.entries.size() == 3);
  const BpReport b = verify_bp_equivalence(BoundedComplex::unit(Z), z_poset({"2", "3"}));
  CHECK(b.equivalent);
  CHECK(b.entries.size() == 7);
  for (const auto& e : b.entries) CHECK(e.quasi_iso);
  CHECK(verify_bp_equivalence(cyclic(Z, "6"), z_poset({"2", "3"})).equivalent);
}

TEST_CASE("verdicts and exit codes") {
  CHECK(verdict_exit_code(Verdict::Pullback) == 0);
  CHECK(verdict_exit_code(Verdict::NotPullback) == 2);
  CHECK(verdict_exit_code(Verdict::RelativePullback) == 3);
  CHECK(std::string(verdict_name(Verdict::RelativePullback)) == "RelativePullback");
  CHECK(std::string(reduction_kind_name(ReductionKind::LocalizeGeneric)) == "LocalizeGeneric");
}

TEST_CASE("representative closed points") {
  const auto z = representative_closed_point(Z, {prime(Z, {"2"}), prime(Z, {"3"})});
  REQUIRE(z);
  CHECK(z->key() == "(5)");
  const BaseRing kx = BaseRing::univariate(0);
  CHECK(representative_closed_point(kx, {prime(kx, {"x"})})->key() == "(x-1)");
  const BaseRing kxy = BaseRing::bivariate(0);
  CHECK(representative_closed_point(kxy, {prime(kxy, {"x", "y"})})->key() == "(x-1,y-1)");
  CHECK_FALSE(representative_closed_point(BaseRing::semilocal_integers({2}), {}));
}

TEST_CASE("individual reduction tests") {
  const auto rs = reduction_tests(BoundedComplex::unit(Z), {prime(Z, {"2"}), AlgPrime::zero(Z)});
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].summary() == "K_(2): not-acyclic over Z_(2); H^0 = Z_(2)/(2)");
  CHECK(rs[1].summary() == "L_(0): not-acyclic over Q; H^0 = Q");
}
