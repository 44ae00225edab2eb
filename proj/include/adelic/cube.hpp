#pragma once

#include "adelic/complex.hpp"
#include "adelic/spectrum.hpp"

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace adelic {

enum class CubeVariant { Adelic, BeilinsonParshin };
const char* cube_variant_name(CubeVariant v);

/// One factor of a cube entry. The assignment gives the prime at each flag position; nullopt marks
/// the undeclared primes, which from that position on live inside a FamilyProduct.
struct CubeBlock {
  std::vector<std::optional<AlgPrime>> assignment;
  RingExpr carrier;
  BoundedComplex complex;  // M over `carrier`, or K_p ⊗ M in the quotient corruption
  bool quotient = false;

  std::string key() const;
};

/// Vertex of the augmented cube; the empty flag is the initial vertex holding M itself.
struct CubeVertex {
  Flag flag;
  std::vector<CubeBlock> blocks;

  int block_index(const std::vector<std::optional<AlgPrime>>& assignment) const;  // -1 if absent
  BoundedComplex complex() const;  // direct sum of the blocks
  int rank(int n) const;
};

struct CubeDiagram {
  SpectrumPoset poset;
  BoundedComplex m;
  CubeVariant variant = CubeVariant::Adelic;
  int r = 0;
  std::vector<CubeVertex> vertices;  // vertices[0] is the empty flag
  std::set<std::tuple<std::string, int, int>> sign_flips;  // (flag, face, target block)
  std::vector<std::string> omitted;  // parts of Spec R the cube does not index
  std::string corruption;

  const CubeVertex& at(const Flag& f) const;
  CubeVertex& at(const Flag& f);
  int lo() const;
  int hi() const;
  /// Block of f.without(i) feeding block `b` of f under the face omitting position i.
  int source_block(const Flag& f, int i, int b) const;
  /// Face δ_i : entry(f.without(i)) -> entry(f) in degree n.
  Matrix face_matrix(const Flag& f, int i, int n) const;
  ComplexMap face(const Flag& f, int i) const;
};

/// Entries ∏ L_{p_0} ∏ L_{p_1} ... ∏ L_{p_s} Λ_{p_s} M (Adelic) or with Λ_{p_i} L_{p_i} at every
/// level (BeilinsonParshin). M must be a complex of free base-ring modules.
CubeDiagram build_cube(const BoundedComplex& m, const SpectrumPoset& poset, CubeVariant variant);
CubeDiagram build_adelic_cube(const BoundedComplex& m, const SpectrumPoset& poset);
CubeDiagram build_bp_cube(const BoundedComplex& m, const SpectrumPoset& poset);

/// Negate one block of one face (negative control for the cochain law).
void corrupt_sign(CubeDiagram& cube, const Flag& f, int i, int block = 0);
/// Replace the completed factor at the closed point p by K_p ⊗ M over the localization at p.
CubeDiagram build_quotient_corrupted(const BoundedComplex& m, const SpectrumPoset& poset, const AlgPrime& p);

struct LawCheck {
  Flag flag;  // the target; an empty source means the initial vertex
  int a = 0;
  int b = 0;
  bool augmented = false;  // the composite starts at the initial vertex
  bool ok = true;
  std::string witness;
};
struct LawReport {
  std::vector<LawCheck> checks;
  int violations = 0;
  bool ok() const { return violations == 0; }
};
/// δ_a δ_b = δ_{b-1} δ_a for every flag and every a < b, including the initial vertex.
/// Throws LawViolation on the first failure when `throw_on_violation`.
LawReport check_cochain_law(const CubeDiagram& cube, bool throw_on_violation = false);

/// Total complex of the cube: vertex T sits with shift |T| - 1 (the initial vertex in degree -1
/// relative to M), internal sign (-1)^{|T|}, face sign (-1)^{position of the added dimension}.
BoundedComplex total_complex(const CubeDiagram& cube, bool augmented = true);

/// Every concrete prime indexing a block, with and without families.
std::vector<AlgPrime> cube_primes(const CubeDiagram& cube);

}  // namespace adelic
