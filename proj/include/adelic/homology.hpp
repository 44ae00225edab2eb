#pragma once

#include "adelic/complex.hpp"
#include "adelic/snf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

/// Core ring of a carrier when it is a single computable ring (no products), else nullopt.
std::optional<Core> core_of(const RingExpr& carrier);

/// Homology in every degree of a complex whose generators share one carrier.
/// Throws FamilyProductRemains or CarrierMismatch otherwise.
std::vector<HomologyGroup> homology(const BoundedComplex& c, int degree_cap = kDefaultDegreeCap);
/// Homology of a free complex computed over an explicit core (carriers ignored).
std::vector<HomologyGroup> homology_over(const BoundedComplex& c, const Core& core,
                                         int degree_cap = kDefaultDegreeCap);

struct TestOptions {
  int degree_cap = kDefaultDegreeCap;
  // The complex is already localized at the test prime, so non-maximal primes collapse too.
  bool localized = false;
};

enum class TestStatus { Acyclic, NotAcyclic, Relative };
const char* test_status_name(TestStatus s);

/// Outcome of one reduction test: K_q ⊗ X or X ⊗ Frac(R).
struct TestReport {
  std::string name;
  std::optional<AlgPrime> prime;  // nullopt for the generic test
  TestStatus status = TestStatus::Acyclic;
  std::string core;
  std::vector<HomologyGroup> homology;  // nonzero groups only
  int generators = 0;
  int killed = 0;
  int cancelled = 0;
  std::vector<AlgPrime> survivors;
  std::vector<std::string> omitted;
  std::vector<std::string> certificates;

  bool acyclic() const { return status == TestStatus::Acyclic; }
  // Canonical one-line summary (byte-stable).
  std::string summary() const;
};

/// K_q ⊗ X: kill factors on which q contains a unit, drop the resulting acyclic subcomplex,
/// collapse the surviving carriers onto the local core at q and compute homology there.
TestReport koszul_test(const BoundedComplex& x, const AlgPrime& q, const TestOptions& opt = {});
/// X ⊗ Frac(R): localize every carrier at (0), cancel unit pivots between equal carriers, and
/// compute what remains over the fraction field.
TestReport generic_test(const BoundedComplex& x, const TestOptions& opt = {});
/// K_p ⊗ L_p X (the generic test when p = (0)).
TestReport support_test(const BoundedComplex& x, const AlgPrime& p, const TestOptions& opt = {});

/// Gaussian elimination of unit pivots between generators with the same carrier.
BoundedComplex cancel_unit_pivots(const BoundedComplex& c, int* cancelled = nullptr);

/// Test primes that detect acyclicity for complexes over a PID base (plus the generic test).
std::vector<AlgPrime> battery_primes(const BoundedComplex& x);
/// Reduction tests over battery_primes followed by the generic test.
std::vector<TestReport> test_battery(const BoundedComplex& x, const std::vector<AlgPrime>& extra = {},
                                     const TestOptions& opt = {});
/// Uniform carriers: direct homology. Mixed carriers: every battery test is acyclic.
bool is_acyclic(const BoundedComplex& x, const TestOptions& opt = {});
bool is_quasi_iso(const ComplexMap& f, const TestOptions& opt = {});

/// Irreducible factors of a nonzero element of Z or k[x] (sorted, no repeats).
std::vector<AlgPrime> prime_divisors(const BaseRing& r, const Poly& e);

}  // namespace adelic
