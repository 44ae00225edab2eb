#include "doctest.h"
#include "support.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();

std::string keys(const std::vector<AlgPrime>& ps) { return primes_str(ps); }

}  // namespace

TEST_CASE("Balmer order reverses containment") {
  const SpectrumPoset p = z_poset({"2", "3"});
  const AlgPrime z0 = AlgPrime::zero(Z), p2 = prime(Z, {"2"}), p3 = prime(Z, {"3"});
  CHECK(p.r() == 1);
  CHECK(p.balmer_le(p2, z0));
  CHECK_FALSE(p.balmer_le(z0, p2));
  CHECK(keys(p.lambda_set(z0)) == keys({z0, p2, p3}));
  CHECK(keys(p.lambda_set(p2)) == "{(2)}");
  CHECK(keys(p.v_set(p2)) == keys({z0, p2}));
  CHECK(keys(p.closed_points()) == "{(2),(3)}");
  CHECK(p.generic() == z0);
  CHECK(p.is_family({p2, p3}));
  CHECK_FALSE(p.is_family({z0}));
  CHECK(p.dim(z0) == 1);
  CHECK(p.dim_at(p.index_of(p3)) == 0);
}

TEST_CASE("poset validation") {
  const AlgPrime z0 = AlgPrime::zero(Z), p2 = prime(Z, {"2"});
  // (2) is not contained in (0).
  CHECK_THROWS_AS(SpectrumPoset::make(Z, {z0, p2}, std::nullopt, {{1, 0}}), Error);
  // dim (2) must be below dim (0).
  CHECK_THROWS_AS(SpectrumPoset::make(Z, {z0, p2}, std::vector<int>{1, 1}), Error);
  const BaseRing r = BaseRing::bivariate(0);
  CHECK_THROWS_AS(SpectrumPoset::make(r, {prime(r, {"x"}), prime(r, {"y", "x-1"})}, std::nullopt, {{0, 1}}), Error);
}

TEST_CASE("coverage of dimensions") {
  const SpectrumPoset p = z_poset({"2"});
  CHECK(p.covers_dim(1));
  CHECK_FALSE(p.covers_dim(0));
  const SpectrumPoset s = SpectrumPoset::full(BaseRing::semilocal_integers({2, 3}));
  CHECK(s.size() == 3);
  CHECK(s.covers_dim(0));
  CHECK(SpectrumPoset::full(BaseRing::rationals()).size() == 1);
  CHECK_THROWS_AS(SpectrumPoset::full(Z), Error);
}

TEST_CASE("flags") {
  CHECK(Flag::make({1, 0}).str() == "(1>0)");
  CHECK(Flag::make({2, 1, 0}).without(1) == Flag::make({2, 0}));
  CHECK_THROWS_AS(Flag::make({0, 1}), Error);
  CHECK_THROWS_AS(Flag::make({}), Error);
  const auto f1 = all_flags(1);
  REQUIRE(f1.size() == 3);
  CHECK(f1[0].str() == "(1)");
  CHECK(f1[1].str() == "(0)");
  CHECK(f1[2].str() == "(1>0)");
  CHECK(all_flags(2).size() == 7);
}

TEST_CASE("flag chains") {
  const auto fc = enumerate_flags(z_poset({"2", "3"}));
  REQUIRE(fc.size() == 3);
  CHECK(fc[2].flag.str() == "(1>0)");
  CHECK(fc[2].chains.size() == 2);

  const SpectrumPoset single = SpectrumPoset::full(BaseRing::semilocal_integers({5}));
  const SpectrumPoset point = SpectrumPoset::make(BaseRing::rationals(), {AlgPrime::zero(BaseRing::rationals())});
  CHECK(enumerate_flags(point).size() == 1);
  CHECK(enumerate_flags(point)[0].chains.size() == 1);
  CHECK(enumerate_flags(single).size() == 3);

  const auto chain = enumerate_flags(kxy_chain());
  CHECK(chain.size() == 7);
  for (const auto& f : chain) CHECK(f.chains.size() == 1);
}

TEST_CASE("k[x,y] chain poset") {
  const SpectrumPoset p = kxy_chain();
  const BaseRing r = p.ring();
  CHECK(p.r() == 2);
  CHECK(p.dim(prime(r, {"x"})) == 1);
  CHECK(p.balmer_le(prime(r, {"x", "y"}), prime(r, {"x"})));
  CHECK_FALSE(p.covers_dim(0));
  CHECK(p.covers_dim(2));
}
