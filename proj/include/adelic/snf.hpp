#pragma once

#include "adelic/matrix.hpp"
#include "adelic/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

/// The ring over which homology is actually computed: the base ring, a semilocalization of it,
/// or its fraction field. `completed` marks flat base change to the completion.
struct Core {
  enum class Kind { Global, Local, Fraction };
  BaseRing base;
  Kind kind = Kind::Global;
  std::vector<AlgPrime> at;    // Local: the primes kept as non-units
  std::vector<Poly> inverted;  // Global: extra inverted elements
  bool completed = false;

  static Core global(const BaseRing& r, std::vector<Poly> inverted = {});
  static Core local(const BaseRing& r, std::vector<AlgPrime> at, bool completed = false);
  static Core fraction(const BaseRing& r);

  bool is_field() const { return kind == Kind::Fraction || base.is_field(); }
  bool is_pid() const { return base.is_pid() || kind == Kind::Fraction; }
  std::string name() const;
};

/// Non-unit primes of a PID core: exactly `primes`, or every prime except divisors of `primes`.
struct PrimeSet {
  bool cofinite = false;
  std::vector<Poly> primes;
};

PrimeSet nonunit_primes(const Core& core);
/// The part of a nonzero element built from non-units of the core, normalized (positive or monic).
Poly strip_to_core(const Poly& d, const Core& core);
bool is_core_unit(const Poly& d, const Core& core);

struct SNF {
  Matrix left;   // rows x rows, invertible over the core
  Matrix diag;   // rows x cols
  Matrix right;  // cols x cols, invertible over the core
  std::vector<Poly> factors;  // nonzero diagonal entries in order (units normalized to 1)
  int rank = 0;
};

/// Smith normal form over a PID core: left·M·right = diag exactly with a divisibility chain.
/// Throws UnsupportedRing for bivariate cores.
SNF smith_normal_form(const Matrix& m, const Core& core);

/// Rank and invariant factors only (left, right and diag stay empty). Over Z cores the
/// elimination runs modulo a nonzero maximal minor, so entries stay bounded.
SNF invariant_factors(const Matrix& m, const Core& core);

/// Rank over the core (fraction-field rank).
int matrix_rank(const Matrix& m, const Core& core);

struct HomologyGroup {
  int degree = 0;
  bool zero = true;
  int free_rank = 0;
  std::vector<Poly> torsion;        // non-unit invariant factors, each dividing the next
  std::vector<long long> hilbert;   // bivariate global cores only
  bool completed = false;
  std::string core;

  std::string str() const;
  bool operator==(const HomologyGroup& o) const;
};

/// Homology ker(d_out)/im(d_in) at R^mid. d_in is mid x in, d_out is out x mid.
HomologyGroup homology_invariants(const Matrix& d_in, const Matrix& d_out, const Core& core, int degree = 0,
                                  int degree_cap = kDefaultDegreeCap);

struct ModuleInvariants {
  int free_rank = 0;
  std::vector<Poly> torsion;
  bool operator==(const ModuleInvariants& o) const;
};

/// Invariants of L/B where L = column span of `l`, B = column span of `b`, B ⊆ L ⊆ R^n (PID core).
ModuleInvariants subquotient_invariants(const Matrix& l, const Matrix& b, const Core& core);

}  // namespace adelic
