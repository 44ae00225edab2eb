#pragma once

#include "adelic/cube.hpp"
#include "adelic/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

enum class ReductionKind { TensorKoszul, LocalizeGeneric };
const char* reduction_kind_name(ReductionKind k);

struct PlannedTest {
  ReductionKind kind = ReductionKind::TensorKoszul;
  std::optional<AlgPrime> prime;  // nullopt for LocalizeGeneric
  std::string origin;             // "declared", "entry", "representative", "generic"
  std::vector<AlgPrime> survivors;
  bool infinite = false;
  std::vector<std::string> omitted;
  std::vector<UnitCertificate> justification;  // kills of declared factors away from the test prime

  std::string name() const;
};

struct ReductionPlan {
  std::vector<PlannedTest> tests;
  bool covers = false;  // every declared prime lies in the support of some test
  std::string str() const;
};

/// Smallest undeclared closed point of a fixed shape (p, x - c, (x - c, y - c)); nullopt when the
/// spectrum is finite or no candidate is left.
std::optional<AlgPrime> representative_closed_point(const BaseRing& r, const std::vector<AlgPrime>& avoid);

/// Koszul tests at every nonzero prime (maximal ones first) followed by the generic test, run
/// concurrently and returned in that order.
std::vector<TestReport> reduction_tests(const BoundedComplex& x, const std::vector<AlgPrime>& primes,
                                        const TestOptions& opt = {});

/// Closed points first (declared, then divisors of the entries of M, then one undeclared
/// representative), then the remaining declared primes by ascending dimension, generic last.
ReductionPlan plan_reductions(const CubeDiagram& cube);

enum class Verdict { Pullback, NotPullback, RelativePullback };
const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct VerificationReport {
  std::string cube_id;
  Verdict verdict = Verdict::Pullback;
  ReductionPlan plan;
  std::vector<TestReport> tests;     // in plan order
  std::vector<std::string> omitted;  // relative caveat
  std::string witness;               // first nonzero invariant when NotPullback
  std::vector<std::string> errors;   // tests that could not be finitized
  std::string str() const;
};

/// Runs every planned test on the augmented total complex; tests run concurrently.
VerificationReport verify_pullback(const CubeDiagram& cube, const TestOptions& opt = {},
                                   const std::string& cube_id = "cube");

struct BpEntry {
  Flag flag;
  std::string block;
  bool same_carrier = false;  // the two carriers rewrite to the same expression
  bool quasi_iso = false;
  std::vector<TestReport> tests;
  std::string note;
};
struct BpReport {
  std::vector<BpEntry> entries;
  bool equivalent = false;
  std::string str() const;
};

/// Entrywise comparison of the adelic and Beilinson-Parshin cubes of M (r = 1): the identity on
/// generators is a map of complexes and its cone is tested for acyclicity.
BpReport verify_bp_equivalence(const BoundedComplex& m, const SpectrumPoset& poset, const TestOptions& opt = {});

}  // namespace adelic
