#include "doctest.h"
#include "support.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();

std::vector<std::string> block_keys(const CubeVertex& v) {
  std::vector<std::string> out;
  for (const auto& b : v.blocks) out.push_back(b.key());
  return out;
}

int count(const LawReport& l, bool augmented) {
  int n = 0;
  for (const auto& c : l.checks) n += c.augmented == augmented;
  return n;
}

}  // namespace

TEST_CASE("Hasse square entries") {
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2", "3"}));
  CHECK(c.r == 1);
  REQUIRE(c.vertices.size() == 4);
  CHECK(c.at(Flag::make({1})).blocks[0].carrier.key() == "Loc[(0)](Z)");
  CHECK(block_keys(c.at(Flag::make({0}))) == std::vector<std::string>{"(2)", "(3)", "*"});
  const CubeVertex& corner = c.at(Flag::make({1, 0}));
  CHECK(corner.blocks[0].carrier.key() == "Loc[(0)](Cpl[(2)](Loc[(2)](Z)))");
  CHECK(corner.blocks[2].carrier.has_family());
  CHECK(c.lo() == 0);
  CHECK(c.hi() == 0);
}

TEST_CASE("face maps") {
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2", "3"}));
  const Flag corner = Flag::make({1, 0});
  // Omitting position 1 leaves (1): every corner block comes from the rational block.
  for (int b = 0; b < 3; ++b) CHECK(c.source_block(corner, 1, b) == 0);
  for (int b = 0; b < 3; ++b) CHECK(c.source_block(corner, 0, b) == b);
  const Matrix d = c.face_matrix(corner, 1, 0);
  CHECK(d.rows == 3);
  CHECK(d.cols == 1);
  CHECK(d == mat(Z, {{"1"}, {"1"}, {"1"}}));
  CHECK_NOTHROW(c.face(corner, 0).validate());
}

TEST_CASE("zero module gives a zero cube") {
  const CubeDiagram c = build_adelic_cube(BoundedComplex(Z), z_poset({"2"}));
  for (const auto& v : c.vertices) CHECK(v.complex().empty());
  CHECK(total_complex(c).empty());
}

TEST_CASE("zero-dimensional cube") {
  const BaseRing z5 = BaseRing::semilocal_integers({5});
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(z5), SpectrumPoset::make(z5, {prime(z5, {"5"})}));
  CHECK(c.r == 0);
  REQUIRE(c.vertices.size() == 2);
  CHECK(c.vertices[1].blocks[0].carrier.key() == "Cpl[(5)](Z_(5))");
  CHECK(c.omitted == std::vector<std::string>{"undeclared primes {(0)}"});
}

TEST_CASE("k[x,y] chain cube") {
  const SpectrumPoset p = kxy_chain();
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(p.ring()), p);
  CHECK(c.r == 2);
  CHECK(c.vertices.size() == 8);
  CHECK(block_keys(c.at(Flag::make({2, 1, 0}))) == std::vector<std::string>{"(0)/(x)/(x,y)", "(0)/(x)/*", "(0)/*/*"});
  const BoundedComplex t = total_complex(c);
  CHECK(t.lo() == -1);
  std::vector<int> ranks;
  for (int n = t.lo(); n <= t.hi(); ++n) ranks.push_back(t.rank(n));
  CHECK(ranks == std::vector<int>{1, 5, 7, 3});
}

TEST_CASE("cochain law") {
  const LawReport hasse = check_cochain_law(build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2", "3"})));
  CHECK(hasse.ok());
  CHECK(count(hasse, false) == 0);
  CHECK(count(hasse, true) == 1);

  const SpectrumPoset p = kxy_chain();
  const LawReport chain = check_cochain_law(build_adelic_cube(BoundedComplex::unit(p.ring()), p));
  CHECK(chain.ok());
  CHECK(count(chain, false) == 3);
  CHECK(count(chain, true) == 3);
  for (const auto& c : chain.checks)
    if (!c.augmented) CHECK(c.flag == Flag::make({2, 1, 0}));
}

TEST_CASE("a sign flip breaks the law") {
  const SpectrumPoset p = kxy_chain();
  CubeDiagram c = build_adelic_cube(BoundedComplex::unit(p.ring()), p);
  corrupt_sign(c, Flag::make({2, 1, 0}), 1, 0);
  const LawReport l = check_cochain_law(c);
  CHECK_FALSE(l.ok());
  CHECK(l.violations == 2);
  CHECK_THROWS_AS(check_cochain_law(c, true), Error);

  CubeDiagram h = build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2", "3"}));
  corrupt_sign(h, Flag::make({1, 0}), 0, 1);
  CHECK_FALSE(check_cochain_law(h).ok());
}

TEST_CASE("Beilinson-Parshin entries") {
  const SpectrumPoset p = z_poset({"2", "3"});
  const CubeDiagram a = build_adelic_cube(BoundedComplex::unit(Z), p);
  const CubeDiagram b = build_bp_cube(BoundedComplex::unit(Z), p);
  CHECK(b.variant == CubeVariant::BeilinsonParshin);
  // After rewriting, Λ_m L_m = Λ_m at closed points and Λ_g L_g = L_g at the generic point.
  for (size_t v = 0; v < a.vertices.size(); ++v)
    for (size_t k = 0; k < a.vertices[v].blocks.size(); ++k)
      CHECK(rewrite(a.vertices[v].blocks[k].carrier) == rewrite(b.vertices[v].blocks[k].carrier));
}

TEST_CASE("quotient corruption") {
  const CubeDiagram c = build_quotient_corrupted(BoundedComplex::unit(Z), z_poset({"2", "3"}), prime(Z, {"3"}));
  const CubeVertex& v = c.at(Flag::make({0}));
  CHECK(v.blocks[1].quotient);
  CHECK(v.blocks[1].carrier.key() == "Loc[(3)](Z)");
  CHECK_FALSE(v.blocks[0].quotient);
  CHECK(check_cochain_law(c).ok());
}

TEST_CASE("total complex conventions") {
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(Z), z_poset({"2"}));
  const BoundedComplex aug = total_complex(c, true);
  const BoundedComplex pun = total_complex(c, false);
  CHECK(aug.lo() == -1);
  CHECK(pun.lo() == 0);
  CHECK(aug.rank(-1) == 1);
  // Faces out of the initial vertex add position 0 and carry sign +1.
  CHECK(aug.diff(-1).at(0, 0).str() == "1");
  CHECK_NOTHROW(aug.validate());
}
