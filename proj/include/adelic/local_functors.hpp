#pragma once

#include "adelic/homology.hpp"
#include "adelic/spectrum.hpp"

#include <map>
#include <string>
#include <vector>

namespace adelic {

/// Koszul generators for a prime. `with` checks that the generators cut out the same prime.
struct KoszulData {
  AlgPrime prime;
  std::vector<Poly> generators;

  static KoszulData of(const AlgPrime& p);
  static KoszulData with(const AlgPrime& p, std::vector<Poly> gens);
};

/// Unstable Koszul complex, degrees -n..0. The zero prime gives the unit.
BoundedComplex koszul(const KoszulData& k);
/// Stable Koszul complex tensored with M (derived torsion).
BoundedComplex gamma(const KoszulData& k, const BoundedComplex& m);
BoundedComplex gamma(const AlgPrime& p, const BoundedComplex& m);
/// The counit Γ M -> M (projection onto the degree-0 stable Koszul summand).
ComplexMap gamma_counit(const BoundedComplex& gm, const BoundedComplex& m);
/// M_p: every carrier gains a Localize tag.
BoundedComplex localize(const AlgPrime& p, const BoundedComplex& m);

/// Local cohomology of a complex at a principal prime of a PID:
/// H^n(Γ_x M) = x-torsion of H^n(M) ⊕ (R[1/x]/R)^{rank H^{n-1}(M)}.
struct GammaDegree {
  int degree = 0;
  std::vector<Poly> torsion;
  int divisible_rank = 0;
  std::string ring = "R";  // printed name of the base ring
  Poly inverted;           // the generator x of the divisible summand R[1/x]/R
  bool zero() const { return torsion.empty() && divisible_rank == 0; }
  std::string str() const;
};
std::vector<GammaDegree> gamma_report(const AlgPrime& p, const BoundedComplex& m);

/// Stable stage of an inverse tower of complexes, one entry per degree.
struct TowerDegree {
  int degree = 0;
  int rank = 0;                  // completed rank (Λ) or free rank of the stable image
  std::vector<Poly> torsion;     // stable torsion
  std::vector<Poly> cokernel;    // torsion of H(T_k) modulo the stable image (V towers)
  int cokernel_rank = 0;
  bool operator==(const TowerDegree&) const;
  bool zero() const { return rank == 0 && torsion.empty(); }
  std::string str() const;
};

struct TowerReport {
  std::string name;
  bool stable = false;       // images agree over the whole window
  int stable_from = 0;       // first level of the window
  int levels = 0;
  std::vector<TowerDegree> limit;  // nonzero degrees only
  std::string note;
  bool zero() const { return stable && limit.empty(); }
  std::string str() const;
};

inline constexpr int kTowerWindow = 4;
inline constexpr int kTowerLevels = 16;
/// Equal consecutive levels required before a tower counts as stable (kTowerWindow by default).
int tower_window();
void set_tower_window(int k);

/// Λ_p M = Hom(Γ_p R, M) through the tower Hom(R --x^k--> R, M). Principal primes of PIDs only.
TowerReport completion_tower(const AlgPrime& p, const BoundedComplex& m);
/// Complete tags on the carriers of M when the tower agrees with them, else the minimal model
/// read off from the tower. The zero prime returns M.
BoundedComplex complete(const AlgPrime& p, const BoundedComplex& m);

/// V_p M = Hom(R_p, M) through the tower M <-s- M with s running over elements outside p.
TowerReport v_tower(const AlgPrime& p, const BoundedComplex& m);
struct VResult {
  bool zero = true;
  std::string description;
  TowerReport tower;
};
VResult v_functor(const AlgPrime& p, const BoundedComplex& m);

struct SupportReport {
  std::vector<AlgPrime> support;
  std::vector<AlgPrime> cosupport;
  std::vector<AlgPrime> undecided;              // cosupport not computable at these primes
  std::map<std::string, std::string> witnesses;  // "supp (2)" / "cosupp (2)" -> invariants
  bool acyclic = false;
  std::string str() const;
};
SupportReport support(const BoundedComplex& m, const SpectrumPoset& poset);
SupportReport support_and_cosupport(const BoundedComplex& m, const SpectrumPoset& poset);
bool cosupport_at(const AlgPrime& p, const BoundedComplex& m, std::string* witness = nullptr);

/// M_{≤i} -> M -> M_{≥i+1} with M_{≤i} = Γ_I M for I the product of the maximal members of the
/// dimension-≤i family (same radical as their intersection), and M_{≥i+1} the cone.
struct DimFiltration {
  int i = 0;
  std::vector<AlgPrime> family;
  std::vector<Poly> generators;  // empty means I = (0) and M_{≤i} = M
  BoundedComplex low;
  BoundedComplex high;
  ComplexMap to_m;
  bool support_checked = false;
};
DimFiltration dim_filtration(const BoundedComplex& m, int i, const SpectrumPoset& poset);

/// Test summaries at the given primes plus the generic test; equal fingerprints are used as
/// quasi-isomorphism evidence between objects with no comparison map.
std::string fingerprint(const BoundedComplex& x, const std::vector<AlgPrime>& primes);

}  // namespace adelic
