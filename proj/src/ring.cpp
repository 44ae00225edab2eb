#include "adelic/ring.hpp"

#include "adelic/groebner.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace adelic {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- BaseRing

BaseRing BaseRing::semilocal_integers(std::vector<Int> primes) {
  for (const auto& p : primes)
    if (p < 2 || !is_prime(p)) fail(ErrorKind::InvalidPrime, "local prime " + p.str() + " is not prime");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return {RingKind::Integers, 0, primes};
}

BaseRing BaseRing::prime_field(unsigned p) {
  if (!is_prime(Int(p))) fail(ErrorKind::InvalidPrime, "characteristic " + std::to_string(p) + " is not prime");
  return {RingKind::PrimeField, p, {}};
}

BaseRing BaseRing::univariate(unsigned charp) {
  if (charp != 0 && !is_prime(Int(charp)))
    fail(ErrorKind::InvalidPrime, "characteristic " + std::to_string(charp) + " is not prime");
  return {RingKind::UnivariatePoly, charp, {}};
}

BaseRing BaseRing::bivariate(unsigned charp) {
  if (charp != 0 && !is_prime(Int(charp)))
    fail(ErrorKind::InvalidPrime, "characteristic " + std::to_string(charp) + " is not prime");
  return {RingKind::BivariatePoly, charp, {}};
}

int BaseRing::krull_dim() const {
  switch (kind) {
    case RingKind::Integers: return 1;
    case RingKind::Rationals:
    case RingKind::PrimeField: return 0;
    case RingKind::UnivariatePoly: return 1;
    case RingKind::BivariatePoly: return 2;
  }
  return 0;
}

std::string BaseRing::key() const {
  std::string field = charp ? "F_" + std::to_string(charp) : "Q";
  switch (kind) {
    case RingKind::Integers: {
      if (local_primes.empty()) return "Z";
      std::string s = "Z_(";
      for (size_t i = 0; i < local_primes.size(); ++i) s += (i ? "," : "") + local_primes[i].str();
      return s + ")";
    }
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return field;
    case RingKind::UnivariatePoly: return field + "[x]";
    case RingKind::BivariatePoly: return field + "[x,y]";
  }
  return "?";
}

Poly BaseRing::element(std::string_view text) const {
  Poly e = parse_poly(text, charp);
  auto reject = [&](const std::string& why) {
    fail(ErrorKind::Parse, "'" + std::string(text) + "' is not an element of " + key() + ": " + why);
  };
  switch (kind) {
    case RingKind::Integers:
      if (!e.is_constant() && !e.is_zero()) reject("not a constant");
      if (!e.is_zero() && mp::denominator(e.constant_term()) != 1) {
        Int den = mp::denominator(e.constant_term());
        if (local_primes.empty()) reject("not an integer");
        for (const auto& p : local_primes)
          if (den % p == 0) reject("denominator divisible by local prime " + p.str());
      }
      break;
    case RingKind::Rationals:
    case RingKind::PrimeField:
      if (!e.is_constant() && !e.is_zero()) reject("not a constant");
      break;
    case RingKind::UnivariatePoly:
      if (e.uses_y()) reject("uses y");
      break;
    case RingKind::BivariatePoly: break;
  }
  return e;
}

// ---------------------------------------------------------------- AlgPrime

namespace {

std::string join_polys(const std::vector<Poly>& ps) {
  std::string s;
  for (size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].str();
  return s;
}

Int integer_of(const Poly& p) {
  if (p.is_zero()) return 0;
  return mp::numerator(p.constant_term());
}

// Recognize {x - g(y), f(y)} or {y - g(x), f(x)} with f irreducible.
bool shape_maximal(const std::vector<Poly>& gens) {
  if (gens.size() != 2) return false;
  for (int swap = 0; swap < 2; ++swap) {
    for (int order = 0; order < 2; ++order) {
      Poly lin = gens[order], f = gens[1 - order];
      if (swap) {
        lin = lin.swapped();
        f = f.swapped();
      }
      // lin = x - g(y): degree one in x with constant x-coefficient; f only in y.
      if (lin.degree_x() != 1 || f.uses_x()) continue;
      bool ok = true;
      for (const auto& [m, c] : lin.terms())
        if (m.x == 1 && m.y != 0) ok = false;
      if (!ok) continue;
      if (certify_irreducible_univariate(f.swapped())) return true;
    }
  }
  return false;
}

}  // namespace

AlgPrime AlgPrime::zero(const BaseRing& ring) { return make(ring, {}, 0); }

AlgPrime AlgPrime::parse(const BaseRing& ring, const std::vector<std::string>& gens, std::optional<int> height) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(ring.element(g));
  return make(ring, ps, height);
}

AlgPrime AlgPrime::make(const BaseRing& ring, std::vector<Poly> gens, std::optional<int> height) {
  AlgPrime p;
  p.ring_ = ring;
  std::erase_if(gens, [](const Poly& g) { return g.is_zero(); });
  p.gens_ = gens;
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::InvalidPrime, "(" + join_polys(gens) + ") in " + ring.key() + ": " + why);
  };
  if (gens.empty()) {
    p.height_ = 0;
  } else {
    switch (ring.kind) {
      case RingKind::Rationals:
      case RingKind::PrimeField: bad("a field has only the zero prime"); break;
      case RingKind::Integers: {
        Int g = 0;
        for (const auto& e : gens) {
          if (mp::denominator(e.constant_term()) != 1 && ring.local_primes.empty()) bad("generator not an integer");
          g = gcd(g, abs_int(integer_of(e)));
        }
        // In Z_S the unit part of the gcd is irrelevant.
        if (ring.is_semilocal()) {
          Int stripped = 1;
          for (const auto& q : ring.local_primes)
            if (valuation(g, q) > 0) stripped *= q;
          if (stripped == 1) bad("generates the unit ideal");
          g = stripped;
        }
        if (g < 2 || !is_prime(g)) bad("gcd " + g.str() + " is not prime");
        p.basis_ = {Poly(Rat(g))};
        p.height_ = 1;
        break;
      }
      case RingKind::UnivariatePoly: {
        Poly g(ring.charp);
        for (const auto& e : gens) g = ugcd(g, e);
        g = g.monic();
        if (g.is_constant()) bad("generates the unit ideal");
        if (!certify_irreducible_univariate(g)) bad("cannot certify irreducibility of " + g.str());
        p.basis_ = {g};
        p.height_ = 1;
        break;
      }
      case RingKind::BivariatePoly: {
        auto gb = ideal_gb(gens);
        if (gb.size() == 1 && gb[0].is_constant()) bad("generates the unit ideal");
        auto qd = quotient_dimension(gb);
        if (qd) {
          if (*qd != 1 && !shape_maximal(gens)) bad("cannot certify that the ideal is maximal");
          p.height_ = 2;
        } else {
          if (gb.size() != 1) bad("height-one primes must be principal");
          if (!certify_irreducible_bivariate(gb[0])) bad("cannot certify irreducibility of " + gb[0].str());
          p.height_ = 1;
        }
        std::sort(gb.begin(), gb.end(), [](const Poly& a, const Poly& b) {
          return deglex_greater(a.lead_monomial(), b.lead_monomial());
        });
        p.basis_ = gb;
        break;
      }
    }
  }
  if (height && *height != p.height_)
    bad("declared height " + std::to_string(*height) + " but computed " + std::to_string(p.height_));
  p.key_ = p.basis_.empty() ? "(0)" : "(" + join_polys(p.basis_) + ")";
  return p;
}

bool AlgPrime::contains(const Poly& e) const {
  if (e.is_zero()) return true;
  if (basis_.empty()) return false;
  switch (ring_.kind) {
    case RingKind::Integers: {
      Int pr = integer_of(basis_[0]);
      if (!e.is_constant()) return false;
      return mp::numerator(e.constant_term()) % pr == 0;
    }
    case RingKind::Rationals:
    case RingKind::PrimeField: return false;
    case RingKind::UnivariatePoly: return udivmod(e, basis_[0]).second.is_zero();
    case RingKind::BivariatePoly: return ideal_member(e, basis_);
  }
  return false;
}

bool AlgPrime::contains(const AlgPrime& q) const {
  return std::all_of(q.basis_.begin(), q.basis_.end(), [&](const Poly& g) { return contains(g); });
}

bool AlgPrime::operator<(const AlgPrime& o) const {
  if (height_ != o.height_) return height_ < o.height_;
  if (key_.size() != o.key_.size()) return key_.size() < o.key_.size();
  return key_ < o.key_;
}

bool comaximal(const AlgPrime& p, const AlgPrime& q) {
  if (p.is_zero() || q.is_zero()) return false;
  if (p.ring().is_pid()) return !(p == q);
  std::vector<Poly> all = p.basis();
  all.insert(all.end(), q.basis().begin(), q.basis().end());
  auto gb = ideal_gb(all);
  return gb.size() == 1 && gb[0].is_constant();
}

std::string primes_str(const std::vector<AlgPrime>& ps) {
  std::string s = "{";
  for (size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].key();
  return s + "}";
}

// ---------------------------------------------------------------- RingExpr

const char* expr_kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::Base: return "Base";
    case ExprKind::Zero: return "Zero";
    case ExprKind::Localize: return "Localize";
    case ExprKind::Invert: return "Invert";
    case ExprKind::Complete: return "Complete";
    case ExprKind::FiniteProduct: return "FiniteProduct";
    case ExprKind::FamilyProduct: return "FamilyProduct";
  }
  return "?";
}

std::string PrimeRef::key() const { return prime ? prime->key() : "$" + std::to_string(bound); }

std::string PrimeFamily::key() const {
  std::string s = "dim=" + std::to_string(dim);
  if (above) s += ";above=" + above->key();
  if (!except.empty()) {
    s += ";except=";
    for (size_t i = 0; i < except.size(); ++i) s += (i ? "," : "") + except[i].key();
  }
  return s;
}

RingExpr RingExpr::finish(Node n) {
  switch (n.kind) {
    case ExprKind::Base: n.key = n.ring.key(); break;
    case ExprKind::Zero: n.key = "0"; break;
    case ExprKind::Localize: n.key = "Loc[" + n.at.key() + "](" + n.children[0].key() + ")"; break;
    case ExprKind::Invert: n.key = "Inv[" + join_polys(n.inverted) + "](" + n.children[0].key() + ")"; break;
    case ExprKind::Complete: n.key = "Cpl[" + n.at.key() + "](" + n.children[0].key() + ")"; break;
    case ExprKind::FiniteProduct: {
      n.key = "Prod(";
      for (size_t i = 0; i < n.children.size(); ++i) n.key += (i ? "," : "") + n.children[i].key();
      n.key += ")";
      break;
    }
    case ExprKind::FamilyProduct:
      n.key = "FamProd[" + n.family.key() + "]{" + n.children[0].key() + "}";
      break;
  }
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::base(const BaseRing& r) {
  Node n;
  n.kind = ExprKind::Base;
  n.ring = r;
  return finish(std::move(n));
}

RingExpr RingExpr::zero(const BaseRing& r) {
  Node n;
  n.kind = ExprKind::Zero;
  n.ring = r;
  return finish(std::move(n));
}

RingExpr RingExpr::localize(const RingExpr& child, PrimeRef at) {
  Node n;
  n.kind = ExprKind::Localize;
  n.ring = child.ring();
  n.children = {child};
  n.at = std::move(at);
  return finish(std::move(n));
}

RingExpr RingExpr::invert(const RingExpr& child, std::vector<Poly> elements) {
  Node n;
  n.kind = ExprKind::Invert;
  n.ring = child.ring();
  n.children = {child};
  std::sort(elements.begin(), elements.end(), [](const Poly& a, const Poly& b) { return a.str() < b.str(); });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  n.inverted = std::move(elements);
  return finish(std::move(n));
}

RingExpr RingExpr::complete(const RingExpr& child, PrimeRef at) {
  Node n;
  n.kind = ExprKind::Complete;
  n.ring = child.ring();
  n.children = {child};
  n.at = std::move(at);
  return finish(std::move(n));
}

RingExpr RingExpr::product(std::vector<RingExpr> children) {
  if (children.empty()) fail(ErrorKind::InvalidExpr, "empty FiniteProduct");
  Node n;
  n.kind = ExprKind::FiniteProduct;
  n.ring = children[0].ring();
  for (const auto& c : children)
    if (!(c.ring() == n.ring)) fail(ErrorKind::InvalidExpr, "FiniteProduct children over different base rings");
  n.children = std::move(children);
  return finish(std::move(n));
}

RingExpr RingExpr::family(const RingExpr& templ, PrimeFamily fam) {
  if (fam.dim < 0 || fam.dim > templ.ring().krull_dim())
    fail(ErrorKind::InvalidExpr, "family dimension out of range");
  Node n;
  n.kind = ExprKind::FamilyProduct;
  n.ring = templ.ring();
  n.children = {templ};
  std::sort(fam.except.begin(), fam.except.end());
  n.family = std::move(fam);
  return finish(std::move(n));
}

bool RingExpr::has_family() const {
  if (kind() == ExprKind::FamilyProduct) return true;
  return std::any_of(children().begin(), children().end(), [](const RingExpr& c) { return c.has_family(); });
}

int RingExpr::size() const {
  int s = 1;
  for (const auto& c : children()) s += c.size();
  return s;
}

int RingExpr::family_count() const {
  int s = kind() == ExprKind::FamilyProduct ? 1 : 0;
  for (const auto& c : children()) s += c.family_count();
  return s;
}

// ---------------------------------------------------------------- rewriting

namespace {

using Env = std::vector<PrimeFamily>;

bool ref_maximal(const PrimeRef& r, const BaseRing& ring, const Env& env) {
  if (r.prime) return r.prime->is_maximal();
  if (r.bound < 0 || r.bound >= static_cast<int>(env.size())) fail(ErrorKind::InvalidExpr, "unbound prime reference");
  return env[env.size() - 1 - r.bound].dim == 0 && ring.krull_dim() >= 0;
}

bool ref_zero(const PrimeRef& r) { return r.prime && r.prime->is_zero(); }

// p ⊆ q for refs; only decidable for concrete primes or identical refs.
std::optional<bool> ref_subset(const PrimeRef& p, const PrimeRef& q) {
  if (p == q) return true;
  if (ref_zero(p)) return true;
  if (p.prime && q.prime) return q.prime->contains(*p.prime);
  return std::nullopt;
}

bool is_unit_constant(const Poly& f, const BaseRing& ring) {
  if (f.is_zero() || !f.is_constant()) return false;
  if (ring.kind != RingKind::Integers) return true;
  Int num = abs_int(mp::numerator(f.constant_term()));
  if (ring.local_primes.empty()) return num == 1 && mp::denominator(f.constant_term()) == 1;
  for (const auto& p : ring.local_primes)
    if (num % p == 0) return false;
  return true;
}

RingExpr rw(const RingExpr& e, Env& env);

RingExpr rw_localize(const RingExpr& x, const PrimeRef& p, Env& env) {
  const BaseRing& ring = x.ring();
  if (x.is_zero()) return x;
  if (ring.is_field()) return x;
  switch (x.kind()) {
    case ExprKind::Base:
      if (p.prime && ring.is_semilocal() && ring.local_primes.size() == 1 && !p.prime->is_zero()) return x;
      break;
    case ExprKind::FiniteProduct: {
      std::vector<RingExpr> cs;
      for (const auto& c : x.children()) cs.push_back(rw_localize(c, p, env));
      return rw(RingExpr::product(cs), env);
    }
    case ExprKind::Localize: {
      auto inner_in_outer = ref_subset(x.at(), p);  // inner ⊆ outer: inner is smaller
      auto outer_in_inner = ref_subset(p, x.at());
      if (inner_in_outer && *inner_in_outer) return x;
      if (outer_in_inner && *outer_in_inner) return rw_localize(x.child(), p, env);
      break;
    }
    case ExprKind::Invert:
      if (p.prime && std::none_of(x.inverted().begin(), x.inverted().end(),
                                  [&](const Poly& f) { return p.prime->contains(f); }))
        return rw_localize(x.child(), p, env);
      break;
    case ExprKind::Complete:
      if (x.at() == p && ref_maximal(p, ring, env)) return x;
      break;
    default: break;
  }
  return RingExpr::localize(x, p);
}

RingExpr rw_complete(const RingExpr& x, const PrimeRef& p, Env& env) {
  if (x.is_zero()) return x;
  if (ref_zero(p)) return x;
  if (x.kind() == ExprKind::Complete && x.at() == p) return x;
  if (ref_maximal(p, x.ring(), env)) {
    if (x.kind() == ExprKind::Localize && x.at() == p) return RingExpr::complete(x, p);
    RingExpr l = rw_localize(x, p, env);
    if (l.kind() == ExprKind::Complete && l.at() == p) return l;
    return RingExpr::complete(l, p);
  }
  return RingExpr::complete(x, p);
}

RingExpr rw_invert(const RingExpr& x, const std::vector<Poly>& fs) {
  if (x.is_zero()) return x;
  std::vector<Poly> keep;
  for (const auto& f : fs) {
    if (f.is_zero()) return RingExpr::zero(x.ring());
    if (is_unit_constant(f, x.ring())) continue;
    // Inverting f is inverting its prime factors (integers) or its monic associate.
    if (x.ring().kind == RingKind::Integers) {
      for (const auto& p : prime_factors(abs_int(mp::numerator(f.constant_term())))) {
        Poly pp{Rat(p)};
        if (!is_unit_constant(pp, x.ring())) keep.push_back(pp);
      }
    } else {
      keep.push_back(f.monic());
    }
  }
  if (x.kind() == ExprKind::Invert) {
    keep.insert(keep.end(), x.inverted().begin(), x.inverted().end());
    return rw_invert(x.child(), keep);
  }
  if (keep.empty()) return x;
  return RingExpr::invert(x, keep);
}

RingExpr rw(const RingExpr& e, Env& env) {
  switch (e.kind()) {
    case ExprKind::Base:
    case ExprKind::Zero: return e;
    case ExprKind::Localize: return rw_localize(rw(e.child(), env), e.at(), env);
    case ExprKind::Complete: return rw_complete(rw(e.child(), env), e.at(), env);
    case ExprKind::Invert: return rw_invert(rw(e.child(), env), e.inverted());
    case ExprKind::FiniteProduct: {
      std::vector<RingExpr> cs;
      for (const auto& c : e.children()) {
        RingExpr r = rw(c, env);
        if (r.is_zero()) continue;
        if (r.kind() == ExprKind::FiniteProduct)
          cs.insert(cs.end(), r.children().begin(), r.children().end());
        else
          cs.push_back(r);
      }
      if (cs.empty()) return RingExpr::zero(e.ring());
      if (cs.size() == 1) return cs[0];
      return RingExpr::product(cs);
    }
    case ExprKind::FamilyProduct: {
      PrimeFamily fam = e.fam();
      if (fam.above && ref_zero(*fam.above)) fam.above.reset();
      env.push_back(fam);
      RingExpr t = rw(e.child(), env);
      env.pop_back();
      if (t.is_zero()) return t;
      return RingExpr::family(t, fam);
    }
  }
  return e;
}

RingExpr subst(const RingExpr& e, const AlgPrime& p, int depth) {
  auto fix = [&](const PrimeRef& r) -> PrimeRef {
    if (!r.is_bound()) return r;
    if (r.bound == depth) return PrimeRef::of(p);
    if (r.bound > depth) return PrimeRef::var(r.bound - 1);
    return r;
  };
  switch (e.kind()) {
    case ExprKind::Base:
    case ExprKind::Zero: return e;
    case ExprKind::Localize: return RingExpr::localize(subst(e.child(), p, depth), fix(e.at()));
    case ExprKind::Complete: return RingExpr::complete(subst(e.child(), p, depth), fix(e.at()));
    case ExprKind::Invert: return RingExpr::invert(subst(e.child(), p, depth), e.inverted());
    case ExprKind::FiniteProduct: {
      std::vector<RingExpr> cs;
      for (const auto& c : e.children()) cs.push_back(subst(c, p, depth));
      return RingExpr::product(cs);
    }
    case ExprKind::FamilyProduct: {
      PrimeFamily fam = e.fam();
      if (fam.above) fam.above = fix(*fam.above);
      return RingExpr::family(subst(e.child(), p, depth + 1), fam);
    }
  }
  return e;
}

}  // namespace

RingExpr rewrite(const RingExpr& e) {
  Env env;
  return rw(e, env);
}

RingExpr instantiate(const RingExpr& templ, const AlgPrime& p) { return subst(templ, p, 0); }

RingExpr localize_at(const RingExpr& e, const AlgPrime& p) {
  return rewrite(RingExpr::localize(e, PrimeRef::of(p)));
}

// ---------------------------------------------------------------- Koszul kills

namespace {

// The template at p vanishes under K_q whenever q is not contained in p.
bool kills_off_support(const RingExpr& t, int dim) {
  switch (t.kind()) {
    case ExprKind::Localize:
      if (t.at().is_bound() && t.at().bound == 0) return true;
      return kills_off_support(t.child(), dim);
    case ExprKind::Complete:
      if (t.at().is_bound() && t.at().bound == 0 && dim == 0) return true;
      return kills_off_support(t.child(), dim);
    case ExprKind::Invert: return kills_off_support(t.child(), dim);
    default: return false;
  }
}

void kill_rec(const RingExpr& e, const AlgPrime& q, KillResult& out, RingExpr& result) {
  const BaseRing& ring = e.ring();
  auto concrete = [&](const PrimeRef& r) -> const AlgPrime& {
    if (!r.prime) fail(ErrorKind::InvalidExpr, "free bound prime reference in " + e.key());
    return *r.prime;
  };
  switch (e.kind()) {
    case ExprKind::Base:
    case ExprKind::Zero: result = e; return;
    case ExprKind::Localize: {
      if (!concrete(e.at()).contains(q)) {
        result = RingExpr::zero(ring);
        return;
      }
      RingExpr c;
      kill_rec(e.child(), q, out, c);
      result = c.is_zero() ? c : RingExpr::localize(c, e.at());
      return;
    }
    case ExprKind::Complete: {
      if (comaximal(concrete(e.at()), q)) {
        result = RingExpr::zero(ring);
        return;
      }
      RingExpr c;
      kill_rec(e.child(), q, out, c);
      result = c.is_zero() ? c : RingExpr::complete(c, e.at());
      return;
    }
    case ExprKind::Invert: {
      for (const auto& f : e.inverted())
        if (q.contains(f)) {
          result = RingExpr::zero(ring);
          return;
        }
      RingExpr c;
      kill_rec(e.child(), q, out, c);
      result = c.is_zero() ? c : RingExpr::invert(c, e.inverted());
      return;
    }
    case ExprKind::FiniteProduct: {
      std::vector<RingExpr> cs;
      for (const auto& ch : e.children()) {
        RingExpr c;
        kill_rec(ch, q, out, c);
        if (!c.is_zero()) cs.push_back(c);
      }
      result = cs.empty() ? RingExpr::zero(ring) : RingExpr::product(cs);
      return;
    }
    case ExprKind::FamilyProduct: {
      const PrimeFamily& fam = e.fam();
      std::optional<AlgPrime> above;
      if (fam.above) above = concrete(*fam.above);
      const int dq = q.dim();
      if (dq <= fam.dim) {
        // Every factor other than the one at q sits at a prime p not containing q.
        if (!kills_off_support(e.child(), fam.dim))
          fail(ErrorKind::UnsupportedExpression, "cannot reduce family factor " + e.child().key() + " under K_" + q.key());
        bool excluded = std::find(fam.except.begin(), fam.except.end(), q) != fam.except.end();
        if (dq < fam.dim || excluded || (above && !q.contains(*above))) {
          result = RingExpr::zero(ring);
          return;
        }
        out.survivors.push_back(q);
        RingExpr c;
        kill_rec(rewrite(instantiate(e.child(), q)), q, out, c);
        result = c.is_zero() ? c : RingExpr::product({c});
        return;
      }
      // Infinitely many primes of dimension fam.dim contain q.
      PrimeFamily refined = fam;
      refined.above = PrimeRef::of(q);
      out.infinite = true;
      std::string desc = "primes p of dim " + std::to_string(fam.dim) + " with p ⊇ " + q.key();
      if (above && !q.contains(*above)) desc += " and p ⊇ " + above->key();
      if (!fam.except.empty()) desc += ", p ∉ " + primes_str(fam.except);
      out.omitted.push_back(desc);
      result = RingExpr::family(e.child(), refined);
      return;
    }
  }
}

std::optional<AlgPrime> head_prime(const RingExpr& e) {
  switch (e.kind()) {
    case ExprKind::Localize:
    case ExprKind::Complete:
      if (e.at().prime && !e.at().prime->is_zero()) return e.at().prime;
      return head_prime(e.child());
    case ExprKind::Invert: return head_prime(e.child());
    default: return std::nullopt;
  }
}

void collect_factor_primes(const RingExpr& e, std::vector<AlgPrime>& out) {
  if (e.kind() == ExprKind::FiniteProduct) {
    for (const auto& c : e.children()) {
      if (auto h = head_prime(c)) out.push_back(*h);
      collect_factor_primes(c, out);
    }
    return;
  }
  if (e.kind() == ExprKind::FamilyProduct) return;
  for (const auto& c : e.children()) collect_factor_primes(c, out);
}

}  // namespace

KillResult kill_under_koszul(const RingExpr& e, const AlgPrime& q) {
  if (!(q.ring() == e.ring())) fail(ErrorKind::InvalidExpr, "test prime over a different base ring");
  KillResult out;
  RingExpr r;
  kill_rec(rewrite(e), q, out, r);
  out.expr = rewrite(r);
  return out;
}

RelevantPrimes relevant_primes(const RingExpr& e, const std::vector<AlgPrime>& tests) {
  RelevantPrimes rp;
  std::set<std::string> seen;
  for (const auto& q : tests) {
    KillResult k = kill_under_koszul(e, q);
    std::vector<AlgPrime> ps = k.survivors;
    collect_factor_primes(k.expr, ps);
    if (!k.expr.is_zero() && k.expr.kind() != ExprKind::FiniteProduct)
      if (auto h = head_prime(k.expr)) ps.push_back(*h);
    for (const auto& p : ps)
      if (seen.insert(p.key()).second) rp.primes.push_back(p);
    if (k.infinite) {
      rp.infinite = true;
      rp.omitted.insert(rp.omitted.end(), k.omitted.begin(), k.omitted.end());
    }
  }
  std::sort(rp.primes.begin(), rp.primes.end());
  return rp;
}

// ---------------------------------------------------------------- structural maps

bool maps_to(const RingExpr& a, const RingExpr& b) {
  if (a == b) return true;
  if (b.is_zero()) return true;
  if (a.is_zero()) return false;
  if (a.kind() == ExprKind::Base) return true;
  switch (b.kind()) {
    case ExprKind::Localize:
    case ExprKind::Invert:
      if (maps_to(a, b.child())) return true;
      if (a.kind() == b.kind() && a.at() == b.at() && a.inverted() == b.inverted() && maps_to(a.child(), b.child()))
        return true;
      // X_q -> X_p for p ⊆ q.
      if (a.kind() == ExprKind::Localize && b.kind() == ExprKind::Localize && maps_to(a.child(), b.child())) {
        auto sub = ref_subset(b.at(), a.at());
        if (sub && *sub) return true;
      }
      break;
    case ExprKind::Complete:
      if (maps_to(a, b.child())) return true;
      if (a.kind() == ExprKind::Complete && maps_to(a.child(), b.child())) {
        auto sub = ref_subset(a.at(), b.at());
        if (sub && *sub) return true;
      }
      break;
    case ExprKind::FiniteProduct:
      if (std::all_of(b.children().begin(), b.children().end(), [&](const RingExpr& c) { return maps_to(a, c); }))
        return true;
      break;
    case ExprKind::FamilyProduct:
      if (a.kind() == ExprKind::FamilyProduct && maps_to(a.child(), b.child())) return true;
      if (maps_to(a, b.child())) return true;
      break;
    default: break;
  }
  if (a.kind() == ExprKind::FiniteProduct)
    return std::any_of(a.children().begin(), a.children().end(), [&](const RingExpr& c) { return maps_to(c, b); });
  if (a.kind() == ExprKind::FamilyProduct) {
    if (auto h = head_prime(b)) return maps_to(rewrite(instantiate(a.child(), *h)), b);
  }
  return false;
}

namespace {

// Wrappers of a pure localization chain (Localize/Invert nodes over Base), outermost first.
std::optional<std::vector<RingExpr>> localization_chain(const RingExpr& e) {
  std::vector<RingExpr> chain;
  RingExpr cur = e;
  while (cur.kind() == ExprKind::Localize || cur.kind() == ExprKind::Invert) {
    chain.push_back(cur);
    cur = cur.child();
  }
  if (cur.kind() != ExprKind::Base) return std::nullopt;
  return chain;
}

RingExpr apply_chain(RingExpr target, const std::vector<RingExpr>& chain) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->kind() == ExprKind::Localize)
      target = RingExpr::localize(target, it->at());
    else
      target = RingExpr::invert(target, it->inverted());
  }
  return rewrite(target);
}

}  // namespace

RingExpr carrier_tensor(const RingExpr& a, const RingExpr& b) {
  if (a.is_zero() || b.is_zero()) return RingExpr::zero(a.ring());
  if (a == b) return a;
  if (auto ca = localization_chain(a)) return apply_chain(b, *ca);
  if (auto cb = localization_chain(b)) return apply_chain(a, *cb);
  fail(ErrorKind::CarrierMismatch, "cannot tensor carriers " + a.key() + " and " + b.key());
}

// ---------------------------------------------------------------- units

const char* unit_verdict_name(UnitVerdict v) {
  switch (v) {
    case UnitVerdict::Unit: return "Unit";
    case UnitVerdict::NonUnit: return "NonUnit";
    case UnitVerdict::Zero: return "Zero";
  }
  return "?";
}

namespace {

std::optional<UnitCertificate> unit_in_base(const Poly& e, const RingExpr& x) {
  UnitCertificate c{e, x, UnitVerdict::NonUnit, ""};
  const BaseRing& r = x.ring();
  if (r.is_field()) {
    c.verdict = UnitVerdict::Unit;
    c.witness = "nonzero in a field";
  } else if (is_unit_constant(e, r)) {
    c.verdict = UnitVerdict::Unit;
    c.witness = r.is_semilocal() ? "not divisible by any local prime" : "invertible constant";
  } else if (r.kind == RingKind::Integers) {
    Int n = abs_int(mp::numerator(e.constant_term()));
    Int p = 0;
    if (r.is_semilocal()) {
      for (const auto& q : r.local_primes)
        if (n % q == 0) p = q;
    } else {
      p = prime_factors(n).front();
    }
    c.witness = e.str() + " ∈ (" + p.str() + ")";
  } else {
    c.witness = "non-constant polynomial lies in a maximal ideal";
  }
  return c;
}

UnitCertificate unit_rec(const Poly& e, const RingExpr& x) {
  UnitCertificate c{e, x, UnitVerdict::NonUnit, ""};
  switch (x.kind()) {
    case ExprKind::Zero:
      c.verdict = UnitVerdict::Unit;
      c.witness = "zero ring";
      return c;
    case ExprKind::Base: return *unit_in_base(e, x);
    case ExprKind::Localize:
    case ExprKind::Complete: {
      if (!x.at().prime) fail(ErrorKind::UnsupportedExpression, "free bound prime in " + x.key());
      const AlgPrime& p = *x.at().prime;
      const bool local = x.kind() == ExprKind::Localize ||
                         (x.child().kind() == ExprKind::Localize && x.child().at() == x.at());
      if (local && !p.contains(e)) {
        c.verdict = UnitVerdict::Unit;
        c.witness = x.kind() == ExprKind::Localize ? e.str() + " ∉ " + p.key()
                                                    : "invertible modulo maximal ideal: " + e.str() + " ∉ " + p.key();
        return c;
      }
      if (x.kind() == ExprKind::Complete && !local) {
        // Completion along a non-maximal prime: units are the elements comaximal with p.
        AlgPrime pe = p;
        std::vector<Poly> g = p.basis();
        g.push_back(e);
        bool comax = false;
        if (p.ring().is_pid()) {
          comax = !p.contains(e);
        } else {
          auto gb = ideal_gb(g);
          comax = gb.size() == 1 && gb[0].is_constant();
        }
        if (comax) {
          c.verdict = UnitVerdict::Unit;
          c.witness = "(" + e.str() + ") + " + p.key() + " is the unit ideal";
        } else {
          c.witness = e.str() + " and " + p.key() + " lie in a common maximal ideal";
        }
        return c;
      }
      // e ∈ p: it stays in the maximal ideal unless already a unit underneath.
      if (x.child().has_family()) fail(ErrorKind::UnsupportedExpression, "unit test inside " + x.key());
      UnitCertificate inner = unit_rec(e, x.child());
      if (inner.verdict == UnitVerdict::Unit) {
        inner.expr = x;
        return inner;
      }
      RingExpr base = x.child();
      while (base.kind() == ExprKind::Localize || base.kind() == ExprKind::Complete) base = base.child();
      if (base.kind() != ExprKind::Base)
        fail(ErrorKind::UnsupportedExpression, "cannot certify non-units in " + x.key());
      c.witness = e.str() + " ∈ " + p.key() + ", the maximal ideal of the local ring";
      return c;
    }
    case ExprKind::Invert: {
      UnitCertificate inner = unit_rec(e, x.child());
      if (inner.verdict == UnitVerdict::Unit) {
        inner.expr = x;
        return inner;
      }
      Poly prod = x.ring().one();
      for (const auto& f : x.inverted()) prod *= f;
      Poly power = prod;
      for (int k = 0; k <= e.total_degree() + 1 + (x.ring().kind == RingKind::Integers ? 64 : 0); ++k) {
        if (x.ring().kind == RingKind::Integers) {
          Int n = abs_int(mp::numerator(e.constant_term()));
          Int f = abs_int(mp::numerator(prod.constant_term()));
          bool all = true;
          for (const auto& pr : prime_factors(n))
            if (f % pr != 0) all = false;
          if (all) {
            c.verdict = UnitVerdict::Unit;
            c.witness = "every prime factor of " + e.str() + " is inverted";
            return c;
          }
          c.witness = e.str() + " has a prime factor not inverted";
          return c;
        }
        if (divides(e, power)) {
          c.verdict = UnitVerdict::Unit;
          c.witness = e.str() + " divides a power of an inverted element";
          return c;
        }
        power *= prod;
      }
      fail(ErrorKind::UnsupportedExpression, "cannot decide invertibility of " + e.str() + " in " + x.key());
    }
    case ExprKind::FiniteProduct: {
      for (const auto& ch : x.children()) {
        UnitCertificate u = unit_rec(e, ch);
        if (u.verdict != UnitVerdict::Unit) {
          u.expr = x;
          u.witness = "not a unit in factor " + ch.key() + ": " + u.witness;
          return u;
        }
      }
      c.verdict = UnitVerdict::Unit;
      c.witness = "unit in every factor";
      return c;
    }
    case ExprKind::FamilyProduct:
      fail(ErrorKind::UnsupportedExpression, "unit testing inside a family product is per factor: " + x.key());
  }
  return c;
}

}  // namespace

UnitCertificate is_unit(const Poly& e, const RingExpr& expr) {
  RingExpr x = rewrite(expr);
  if (e.is_zero() && !x.is_zero()) return {e, x, UnitVerdict::Zero, "zero element"};
  // A localization at p certifies every element outside p, whatever lies underneath.
  if (x.kind() == ExprKind::Localize && x.at().prime && !x.at().prime->contains(e))
    return {e, x, UnitVerdict::Unit, e.str() + " ∉ " + x.at().prime->key()};
  return unit_rec(e, x);
}

}  // namespace adelic
