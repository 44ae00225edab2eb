#pragma once

#include "adelic/matrix.hpp"
#include "adelic/ring.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace adelic {

/// One free generator: a copy of its carrier ring. Differential entries are base-ring scalars
/// times the structural ring map between the carriers involved.
struct Gen {
  RingExpr carrier;
  std::string label;
};

/// Bounded cochain complex (d raises degree) of finite sums of carrier rings.
class BoundedComplex {
 public:
  BoundedComplex() = default;
  explicit BoundedComplex(BaseRing ring) : ring_(std::move(ring)) {}

  static BoundedComplex zero(const BaseRing& r) { return BoundedComplex(r); }
  // R in degree 0.
  static BoundedComplex unit(const BaseRing& r);
  // Free complex over the base: ranks from degree lo, differentials d^n : R^{rank n} -> R^{rank n+1}.
  static BoundedComplex free(const BaseRing& r, int lo, const std::vector<int>& ranks, const std::vector<Matrix>& d);

  const BaseRing& ring() const { return ring_; }
  bool empty() const { return gens_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(gens_.size()) - 1; }
  int rank(int n) const;
  int total_rank() const;
  const std::vector<Gen>& gens(int n) const;
  // d^n : degree n -> n+1, rank(n+1) x rank(n); zero outside the range.
  Matrix diff(int n) const;

  // Builders. Degrees are created on demand.
  void add_gen(int n, Gen g);
  void set_diff(int n, Matrix m);
  Matrix& diff_ref(int n);
  // Drop zero-rank degrees at both ends.
  void trim();

  // d∘d = 0 and every nonzero entry is a structural map between carriers. Throws InvalidComplex.
  void validate() const;
  bool carriers_uniform() const;
  std::string str() const;

 private:
  void ensure_degree(int n);
  BaseRing ring_;
  int lo_ = 0;
  std::vector<std::vector<Gen>> gens_;
  std::vector<Matrix> d_;  // d_[i] is d^{lo+i}; size == gens_.size()
};

/// Chain map; components[n] is target.rank(n) x source.rank(n).
struct ComplexMap {
  BoundedComplex source;
  BoundedComplex target;
  std::map<int, Matrix> components;

  Matrix component(int n) const;
  // Commutes with the differentials and entries are structural. Throws NonCommuting.
  void validate() const;
};

ComplexMap identity_map(const BoundedComplex& c);
ComplexMap compose(const ComplexMap& g, const ComplexMap& f);  // g ∘ f
ComplexMap scaled_map(const ComplexMap& f, const Poly& s);

/// C[k]: degree n holds C^{n+k}; differential signs (-1)^k.
BoundedComplex shift(const BoundedComplex& c, int k);
BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b);
/// Mapping cone: degree n is A^{n+1} ⊕ B^n, d = [[-d_A, 0], [f, d_B]].
BoundedComplex cone(const ComplexMap& f);
/// Total complex with the Koszul sign: d(c⊗e) = dc⊗e + (-1)^p c⊗de. Carriers via carrier_tensor.
BoundedComplex tensor(const BoundedComplex& c, const BoundedComplex& d);
/// Internal Hom with d(f) = d_D f - (-1)^n f d_C. C must have base carriers.
BoundedComplex hom_complex(const BoundedComplex& c, const BoundedComplex& d);
/// Apply a carrier transformation to every generator; Zero carriers are dropped (they carry 0).
BoundedComplex retag(const BoundedComplex& c, const std::function<RingExpr(const RingExpr&)>& f);
/// Flat base change to `e`: each carrier c becomes carrier_tensor(e, c).
BoundedComplex base_change(const BoundedComplex& c, const RingExpr& e);
/// Keep the generators for which keep(n, index) holds (restriction of the matrices).
BoundedComplex restrict_gens(const BoundedComplex& c, const std::function<bool(int, int)>& keep);

/// Stable-convention Koszul complex on x_1..x_n: tensor of (R --x_i--> R) in degrees -1, 0.
BoundedComplex koszul_complex(const BaseRing& r, const std::vector<Poly>& xs);
/// Stable Koszul complex: tensor of (R -> R[1/x_i]) in degrees 0, 1.
BoundedComplex stable_koszul_complex(const BaseRing& r, const std::vector<Poly>& xs);

}  // namespace adelic
