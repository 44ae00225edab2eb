#include "doctest.h"
#include "support.hpp"

#include "adelic/adelic_module.hpp"

using namespace adelic;
using namespace testing_support;

namespace {

const BaseRing Z = BaseRing::integers();

// Z -> Q <- Z carrying Z/3 on the left and 0 elsewhere.
AdelicModule z3_cospan() {
  const RingExpr b = RingExpr::base(Z);
  const RingExpr q = RingExpr::localize(b, PrimeRef::of(AlgPrime::zero(Z)));
  AdelicModule x;
  x.rings = RingCube::cospan(Z, b, q, b);
  x.modules.assign(3, BoundedComplex(Z));
  x.modules[0] = cyclic(Z, "3");
  x.faces.assign(3, {});
  x.faces[2] = {ComplexMap{x.modules[1], x.modules[2], {}}, ComplexMap{x.modules[0], x.modules[2], {}}};
  x.validate();
  return x;
}

std::vector<std::string> nonzero(const BoundedComplex& c) {
  std::vector<std::string> out;
  for (const auto& h : homology(c))
    if (!h.zero) out.push_back(std::to_string(h.degree) + ":" + h.str());
  return out;
}

}  // namespace

TEST_CASE("tensoring up") {
  const SpectrumPoset p = z_poset({"2"});
  const AdelicModule t = tensor_up(cyclic(Z, "2"), p);
  CHECK(module_tuple(t) == "(0; Z_(2)^∧/(2) at (2); 0)");
  const AdelicModule u = tensor_up(BoundedComplex::unit(Z), p);
  CHECK(u.rings.names == std::vector<std::string>{"(1)", "(0)", "(1>0)"});
  CHECK(module_tuple(u).rfind("(Q; Z_(2)^∧ at (2), ", 0) == 0);
  CHECK(check_module_law(u).ok());
  CHECK(is_quasi_iso(base_change(u, 2, 0)));
  CHECK_FALSE(reduce_to_base(extend_scalars(u, 2, 0)));
}

TEST_CASE("tensored-up modules are cocartesian") {
  const AdelicModule t = tensor_up(cyclic(Z, "6"), z_poset({"2", "3"}));
  const CocartesianStatus s = is_cocartesian(t);
  CHECK(s.cocartesian);
  CHECK(s.faces.size() == 2);
  CHECK(s.str() == "cocartesian\n  face 0 into (1>0): quasi-iso\n  face 1 into (1>0): quasi-iso\n");
  CHECK(primes_str(module_test_primes(t)) == "{(2),(3),(5)}");
}

TEST_CASE("a broken base change is not cocartesian") {
  AdelicModule t = tensor_up(BoundedComplex::unit(Z), z_poset({"2"}));
  Matrix& m = t.faces[2][0].components.at(0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = Z.element("0");
  const CocartesianStatus s = is_cocartesian(t);
  CHECK_FALSE(s.cocartesian);
}

TEST_CASE("cocartesian modules outside the image") {
  const AdelicModule x = z3_cospan();
  CHECK(is_cocartesian(x).cocartesian);
  CHECK(module_tuple(x) == "(Z/(3); 0; 0)");
  CHECK(nonzero(holim_module(x)) == std::vector<std::string>{"0:Z/(3)"});
  const RoundtripReport r = roundtrip_module(x);
  CHECK_FALSE(r.pass);
  CHECK(r.verdict == Verdict::NotPullback);
  CHECK(r.image == "(Z/(3); 0; Z/(3))");
  CHECK(r.witness == "(Z/(3); 0; Z/(3))");
}

TEST_CASE("round trips through holim") {
  const SpectrumPoset p = z_poset({"2", "3"});
  for (const char* n : {"4", "6", "0"}) {
    const RoundtripReport r = roundtrip_check(cyclic(Z, n), p);
    CHECK(r.pass);
  }
  const RoundtripReport u = roundtrip_check(BoundedComplex::unit(Z), p);
  CHECK(u.pass);
  CHECK(u.tests.size() == 4);
  // Completion carriers do not reduce back to Z.
  CHECK_THROWS_AS(roundtrip_module(tensor_up(cyclic(Z, "2"), z_poset({"2"}))), Error);
}

TEST_CASE("reconstruction by dimension") {
  const AdelicModule u = tensor_up(BoundedComplex::unit(Z), z_poset({"2"}));
  const FdStage f1 = f_d_reconstruct(u, 1);
  CHECK(f1.eta_d_qiso);
  CHECK(f1.certified);
  CHECK(f1.cone_dim == 0);
  const FdStage f0 = f_d_reconstruct(u, 0);
  CHECK(f0.eta_d_qiso);
  CHECK_FALSE(f0.certified);
  CHECK(f0.cone_dim == 1);
  const Reconstruction rc = reconstruct(u);
  CHECK(rc.ok);
  REQUIRE(rc.stages.size() == 2);
  CHECK(rc.stages[0].d == 1);
  CHECK(rc.stages[1].cone_dim == -1);
}
