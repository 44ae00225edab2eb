#pragma once

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adelic {

enum class RingKind { Integers, Rationals, PrimeField, UnivariatePoly, BivariatePoly };

/// A base ring R. Integers with nonempty `local_primes` is the semilocal ring Z_S.
struct BaseRing {
  RingKind kind = RingKind::Integers;
  unsigned charp = 0;
  std::vector<Int> local_primes;

  static BaseRing integers() { return {}; }
  static BaseRing semilocal_integers(std::vector<Int> primes);
  static BaseRing rationals() { return {RingKind::Rationals, 0, {}}; }
  static BaseRing prime_field(unsigned p);
  static BaseRing univariate(unsigned charp);
  static BaseRing bivariate(unsigned charp);

  int krull_dim() const;
  bool is_field() const { return kind == RingKind::Rationals || kind == RingKind::PrimeField; }
  bool is_pid() const { return kind != RingKind::BivariatePoly; }
  bool is_semilocal() const { return kind == RingKind::Integers && !local_primes.empty(); }
  // Finitely many primes in every dimension.
  bool finite_spectrum() const { return is_field() || is_semilocal(); }
  std::string key() const;
  /// Parse and validate an element string.
  Poly element(std::string_view text) const;
  Poly one() const { return Poly(Rat(1), charp); }
  Poly zero_element() const { return Poly(charp); }

  bool operator==(const BaseRing&) const = default;
};

/// A prime ideal of a base ring with verified generators.
class AlgPrime {
 public:
  static AlgPrime make(const BaseRing& ring, std::vector<Poly> gens, std::optional<int> height = std::nullopt);
  static AlgPrime parse(const BaseRing& ring, const std::vector<std::string>& gens,
                        std::optional<int> height = std::nullopt);
  static AlgPrime zero(const BaseRing& ring);

  const BaseRing& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  // Canonical generators: positive prime, monic polynomial or reduced Groebner basis.
  const std::vector<Poly>& basis() const { return basis_; }
  int height() const { return height_; }
  // Krull dimension of R/p; the Balmer dimension of the prime.
  int dim() const { return ring_.krull_dim() - height_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_maximal() const { return height_ == ring_.krull_dim(); }

  bool contains(const Poly& e) const;
  // q is contained in *this.
  bool contains(const AlgPrime& q) const;
  const std::string& key() const { return key_; }

  bool operator==(const AlgPrime& o) const { return key_ == o.key_ && ring_ == o.ring_; }
  bool operator<(const AlgPrime& o) const;

 private:
  BaseRing ring_;
  std::vector<Poly> gens_;
  std::vector<Poly> basis_;
  int height_ = 0;
  std::string key_;
};

// p + q is the unit ideal.
bool comaximal(const AlgPrime& p, const AlgPrime& q);
// Every prime contains (0) in the rings we handle, so a family constraint on (0) is empty.
std::string primes_str(const std::vector<AlgPrime>& ps);

// ------------------------------------------------------------- RingExpr

enum class ExprKind { Base, Zero, Localize, Invert, Complete, FiniteProduct, FamilyProduct };

const char* expr_kind_name(ExprKind k);

/// A concrete prime or a de Bruijn reference to the prime bound by an enclosing FamilyProduct
/// (0 = innermost binder).
struct PrimeRef {
  std::optional<AlgPrime> prime;
  int bound = -1;

  static PrimeRef of(AlgPrime p) { return {std::move(p), -1}; }
  static PrimeRef var(int index) { return {std::nullopt, index}; }
  bool is_bound() const { return !prime.has_value(); }
  std::string key() const;
  bool operator==(const PrimeRef& o) const { return key() == o.key(); }
};

/// The index set "all primes of dimension `dim` containing `above`, except `except`".
struct PrimeFamily {
  int dim = 0;
  std::optional<PrimeRef> above;
  std::vector<AlgPrime> except;
  std::string key() const;
};

class RingExpr {
 public:
  RingExpr() = default;

  // Raw constructors: no rewriting.
  static RingExpr base(const BaseRing& r);
  static RingExpr zero(const BaseRing& r);
  static RingExpr localize(const RingExpr& child, PrimeRef at);
  static RingExpr invert(const RingExpr& child, std::vector<Poly> elements);
  static RingExpr complete(const RingExpr& child, PrimeRef at);
  static RingExpr product(std::vector<RingExpr> children);
  static RingExpr family(const RingExpr& templ, PrimeFamily fam);

  bool valid() const { return static_cast<bool>(n_); }
  ExprKind kind() const { return n_->kind; }
  const BaseRing& ring() const { return n_->ring; }
  const RingExpr& child() const { return n_->children.at(0); }
  const std::vector<RingExpr>& children() const { return n_->children; }
  const PrimeRef& at() const { return n_->at; }
  const std::vector<Poly>& inverted() const { return n_->inverted; }
  const PrimeFamily& fam() const { return n_->family; }
  const std::string& key() const { return n_->key; }
  std::string str() const { return key(); }

  bool is_zero() const { return kind() == ExprKind::Zero; }
  bool has_family() const;
  int size() const;
  int family_count() const;

  bool operator==(const RingExpr& o) const { return key() == o.key(); }
  bool operator<(const RingExpr& o) const { return key() < o.key(); }

 private:
  struct Node {
    ExprKind kind = ExprKind::Base;
    BaseRing ring;
    std::vector<RingExpr> children;
    PrimeRef at;
    std::vector<Poly> inverted;
    PrimeFamily family;
    std::string key;
  };
  explicit RingExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static RingExpr finish(Node n);
  std::shared_ptr<const Node> n_;
};

/// Normal form under the rewrite rules: zero propagation, Localize over finite products,
/// Localize∘Localize takes the smaller prime, Complete at (0) is the identity, Localize at m
/// after Complete at m is absorbed for maximal m, Complete∘Complete at the same prime is idempotent,
/// and Complete at a maximal m is written over the localization at m.
RingExpr rewrite(const RingExpr& e);

/// Replace bound index 0 by `p` (shifting the remaining indices).
RingExpr instantiate(const RingExpr& templ, const AlgPrime& p);

struct KillResult {
  RingExpr expr;                     // reduced expression (Zero when killed)
  bool infinite = false;             // an infinite family of factors survives
  std::vector<std::string> omitted;  // description of the surviving infinite families
  std::vector<AlgPrime> survivors;   // instantiated family factors
};

/// Reduce an expression under K_q ⊗ (-): kill factors on which a generator of q is a unit and
/// finitize family products whose survivors are finite.
KillResult kill_under_koszul(const RingExpr& e, const AlgPrime& q);

struct RelevantPrimes {
  std::vector<AlgPrime> primes;
  bool infinite = false;
  std::vector<std::string> omitted;
};

/// Primes indexing product factors that survive tensoring with K_q for some q in `tests`.
RelevantPrimes relevant_primes(const RingExpr& e, const std::vector<AlgPrime>& tests);

/// A canonical structural ring map from a to b exists (unit maps, diagonals, projections).
bool maps_to(const RingExpr& a, const RingExpr& b);

/// Tensor of two carriers when one is obtained from the base by localizations.
RingExpr carrier_tensor(const RingExpr& a, const RingExpr& b);

/// Apply Localize at p and rewrite.
RingExpr localize_at(const RingExpr& e, const AlgPrime& p);

enum class UnitVerdict { Unit, NonUnit, Zero };
const char* unit_verdict_name(UnitVerdict v);

struct UnitCertificate {
  Poly element;
  RingExpr expr;
  UnitVerdict verdict = UnitVerdict::NonUnit;
  std::string witness;
};

UnitCertificate is_unit(const Poly& e, const RingExpr& expr);

}  // namespace adelic
