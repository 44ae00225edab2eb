#pragma once

#include "adelic/ring.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

/// A declared finite set of primes of R with a dimension function. The Balmer order is the
/// reverse of containment: p <= q iff p ⊇ q, so closed points are the maximal ideals.
class SpectrumPoset {
 public:
  SpectrumPoset() = default;

  /// Validates declared containments by ideal membership and dimensions against in-poset chains.
  /// `dims` defaults to the Krull dimension of R/p. Throws InvalidScenario.
  static SpectrumPoset make(const BaseRing& ring, std::vector<AlgPrime> primes,
                            std::optional<std::vector<int>> dims = std::nullopt,
                            const std::vector<std::pair<int, int>>& containments = {});
  /// Every prime of a ring with finitely many primes (fields and Z_S).
  static SpectrumPoset full(const BaseRing& ring);

  const BaseRing& ring() const { return ring_; }
  const std::vector<AlgPrime>& primes() const { return primes_; }
  int size() const { return static_cast<int>(primes_.size()); }
  int index_of(const AlgPrime& p) const;  // UnknownPrime
  bool contains(const AlgPrime& p) const;
  int dim(const AlgPrime& p) const;
  int dim_at(int i) const { return dims_[i]; }
  int r() const { return r_; }
  std::optional<AlgPrime> generic() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  // p <= q in the Balmer order.
  bool balmer_le(const AlgPrime& p, const AlgPrime& q) const;
  /// {p : p <= q}, a family.
  std::vector<AlgPrime> lambda_set(const AlgPrime& q) const;
  /// {p : p >= q}, a cofamily.
  std::vector<AlgPrime> v_set(const AlgPrime& q) const;
  std::vector<AlgPrime> of_dim(int d) const;
  std::vector<AlgPrime> closed_points() const { return of_dim(0); }
  // Downward closed in the Balmer order.
  bool is_family(const std::vector<AlgPrime>& s) const;

  // Every prime of dimension d of the ambient ring is declared.
  bool covers_dim(int d) const;
  /// Throws UnknownPrime if a concrete prime of `e` is not declared.
  void check_expr(const RingExpr& e) const;

  std::string str() const;

 private:
  BaseRing ring_;
  std::vector<AlgPrime> primes_;
  std::vector<int> dims_;
  std::vector<std::vector<bool>> sub_;  // sub_[i][j]: primes_[i] ⊆ primes_[j]
  int r_ = 0;
  std::vector<std::string> warnings_;
};

/// Strictly decreasing dimensions d_0 > ... > d_s.
struct Flag {
  std::vector<int> dims;

  static Flag make(std::vector<int> dims);  // InvalidScenario unless strictly decreasing and nonempty
  int size() const { return static_cast<int>(dims.size()); }
  // The flag without position i.
  Flag without(int i) const;
  bool contains(int d) const;
  std::string str() const;
  bool operator==(const Flag&) const = default;
  bool operator<(const Flag& o) const;
};

/// Chains p_0, ..., p_s with dim p_i = d_i and p_{i+1} <= p_i (so p_{i+1} ⊇ p_i).
struct FlagChains {
  Flag flag;
  std::vector<std::vector<AlgPrime>> chains;
};

/// All nonempty subsets of {0..r}, by size and then lexicographically from the top.
std::vector<Flag> all_flags(int r);
std::vector<FlagChains> enumerate_flags(const SpectrumPoset& poset);

}  // namespace adelic
