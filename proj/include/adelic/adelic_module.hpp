#pragma once

#include "adelic/cube.hpp"
#include "adelic/verifier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adelic {

/// Punctured (r+1)-cube of rings. Vertex v is a nonempty flag; its ring is the product of
/// `factors[v]`, and the face omitting position i sends factor face_source[v][i][b] of the
/// smaller vertex to factor b of v.
struct RingCube {
  BaseRing base;
  int r = 0;
  std::vector<Flag> flags;
  std::vector<std::string> names;
  std::vector<std::vector<RingExpr>> factors;
  std::vector<std::vector<std::string>> factor_labels;
  std::vector<std::vector<std::vector<int>>> face_source;
  std::vector<int> display;             // vertex order for printed tuples
  std::optional<SpectrumPoset> poset;   // set for adelic cubes

  static RingCube adelic(const CubeDiagram& cube);
  /// left -> corner <- right as the square over flags (1), (0), (1>0), printed left, corner, right.
  static RingCube cospan(const BaseRing& base, const RingExpr& left, const RingExpr& corner, const RingExpr& right,
                         const std::vector<std::string>& names = {"left", "corner", "right"});

  int size() const { return static_cast<int>(flags.size()); }
  int index(const Flag& f) const;
  int factor_of(int v, const RingExpr& carrier) const;  // -1 if none
  int dim_of(const AlgPrime& p) const;
};

/// Module over a ring cube: one complex per vertex and, per face, the semilinear map
/// X(v.without(i)) -> X(v).
struct AdelicModule {
  RingCube rings;
  std::vector<BoundedComplex> modules;
  std::vector<std::vector<ComplexMap>> faces;  // faces[v][i]; empty for vertices of size 1

  const BoundedComplex& at(const Flag& f) const { return modules[rings.index(f)]; }
  void validate() const;
  std::string str() const;
};

/// Extension of scalars of X(v.without(i)) along the face, and the base change map to X(v).
BoundedComplex extend_scalars(const AdelicModule& x, int v, int i);
ComplexMap base_change(const AdelicModule& x, int v, int i);

/// δ_a δ_b = δ_{b-1} δ_a for the module face maps.
LawReport check_module_law(const AdelicModule& x);

/// Test primes for reductions on the module: declared primes, divisors of matrix entries, and
/// one undeclared closed point.
std::vector<AlgPrime> module_test_primes(const AdelicModule& x);

/// 𝟙_ad ⊗ M with the canonical base changes.
AdelicModule tensor_up(const BoundedComplex& m, const SpectrumPoset& poset);
/// M tensored up along an arbitrary ring cube (every generator of M must carry the base ring).
AdelicModule tensor_up(const BoundedComplex& m, const RingCube& rings);

struct CocartesianFace {
  Flag target;
  int face = 0;
  bool quasi_iso = false;
  std::vector<TestReport> tests;
  std::string witness;
};
struct CocartesianStatus {
  std::vector<CocartesianFace> faces;
  bool cocartesian = true;
  std::string str() const;
};
CocartesianStatus is_cocartesian(const AdelicModule& x, const TestOptions& opt = {});

/// Totalization of the punctured diagram with unit pivots cancelled.
BoundedComplex holim_module(const AdelicModule& x);
/// The complex with every carrier equal to the base ring, if unit cancellation gets there.
std::optional<BoundedComplex> reduce_to_base(const BoundedComplex& c);

/// Printed value of one vertex: "0", a homology description, or per-factor descriptions.
std::string vertex_summary(const AdelicModule& x, int v, const TestOptions& opt = {});
/// Tuple of vertex summaries in display order, e.g. "(Z/(3); 0; Z/(3))".
std::string module_tuple(const AdelicModule& x, const TestOptions& opt = {});

struct RoundtripReport {
  bool pass = false;
  Verdict verdict = Verdict::Pullback;
  std::vector<TestReport> tests;
  std::string original;  // module tuple of X
  std::string image;     // module tuple of tensor_up(holim X)
  std::string witness;
  std::string str() const;
};
/// M -> holim(𝟙_ad ⊗ M): the cone is the augmented total complex of the cube of M.
RoundtripReport roundtrip_check(const BoundedComplex& m, const SpectrumPoset& poset, const TestOptions& opt = {});
/// X versus tensor_up(holim X), compared vertexwise.
RoundtripReport roundtrip_module(const AdelicModule& x, const TestOptions& opt = {});

struct FdStage {
  int d = 0;
  AdelicModule fd;                 // f_d(X(d)), vertex 𝐝 holding X({d} ∪ 𝐝) or 0
  std::vector<ComplexMap> eta;     // X(𝐝) -> f_d(X(d))(𝐝)
  bool eta_d_qiso = false;
  AdelicModule cone;
  std::vector<std::string> cone_support;  // "vertex: prime" where the cone is supported
  int cone_dim = -1;                       // largest dimension in the cone's support, -1 if empty
  bool certified = false;                  // cone_dim < d
  std::string str() const;
};
FdStage f_d_reconstruct(const AdelicModule& x, int d, const TestOptions& opt = {});

struct Reconstruction {
  std::vector<FdStage> stages;  // d = r, r-1, ..., 0
  bool ok = false;
  std::string str() const;
};
/// Peels X by f_r, f_{r-1}, ... on successive cones; support must drop at every stage.
Reconstruction reconstruct(const AdelicModule& x, const TestOptions& opt = {});

}  // namespace adelic
