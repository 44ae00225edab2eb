#pragma once

#include "adelic/arith.hpp"

#include <optional>
#include <vector>

namespace adelic {

// Minimal Buchberger engine over k[x,y] (k = Q or F_p), degree-lex order fixed.

inline constexpr int kDefaultDegreeCap = 24;

/// Reduced Groebner basis of an ideal. Throws DegreeBoundExceeded past `degree_cap`.
std::vector<Poly> ideal_gb(const std::vector<Poly>& gens, int degree_cap = kDefaultDegreeCap);
/// Normal form of f modulo a Groebner basis.
Poly ideal_nf(const Poly& f, const std::vector<Poly>& gb);
bool ideal_member(const Poly& f, const std::vector<Poly>& gb);
/// Number of standard monomials of k[x,y]/I, or nullopt when infinite.
std::optional<int> quotient_dimension(const std::vector<Poly>& gb);

// ------------------------------------------------------------- modules

using ModVec = std::vector<Poly>;

struct ModLead {
  int comp = -1;
  Monomial mono;
  Rat coeff;
};

enum class ModOrder { TermOverPosition, PositionOverTerm };

struct ModuleGB {
  int rank = 0;
  ModOrder order = ModOrder::TermOverPosition;
  std::vector<ModVec> basis;
};

ModLead module_lead(const ModVec& v, ModOrder order);
bool is_zero_vec(const ModVec& v);

ModuleGB module_gb(const std::vector<ModVec>& gens, int rank, ModOrder order,
                   int degree_cap = kDefaultDegreeCap);
ModVec module_nf(const ModVec& v, const ModuleGB& gb);
/// Every S-vector of the basis reduces to zero (Buchberger criterion, used by tests).
bool is_groebner_basis(const ModuleGB& gb);

using PolyMatrix = std::vector<std::vector<Poly>>;  // row-major, rows x cols

/// Generators of ker(A : R^cols -> R^rows) as vectors in R^cols (Schreyer-style elimination).
std::vector<ModVec> kernel_generators(const PolyMatrix& a, int cols, int degree_cap = kDefaultDegreeCap);

struct PolyHomology {
  bool is_zero = false;
  bool homogeneous = true;
  // Hilbert function of ker/im in degrees 0..bound (exact when the maps are homogeneous).
  std::vector<long long> hilbert;
  std::vector<ModVec> kernel;  // generators of ker(d_out)
  std::vector<ModVec> image;   // generators of im(d_in)
};

/// Homology ker(d_out)/im(d_in) at the middle term R^mid.
/// d_in is mid x in_rank, d_out is out_rank x mid.
PolyHomology groebner_homology(const PolyMatrix& d_in, int in_rank, const PolyMatrix& d_out,
                               int mid, int hilbert_bound = 8, int degree_cap = kDefaultDegreeCap);

/// Whether the homology vanishes after localizing at the prime with Groebner basis `prime_gb`.
/// Uses: H_P = 0 iff every kernel generator g has (im : g) not contained in P.
bool homology_vanishes_locally(const PolyHomology& h, int mid, const std::vector<Poly>& prime_gb,
                               int degree_cap = kDefaultDegreeCap);

/// Rank over the fraction field via fraction-free elimination.
int fraction_field_rank(const PolyMatrix& a, int cols);

/// Exact division in k[x,y]; throws if b does not divide a.
Poly exact_divide(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

}  // namespace adelic
