#include "adelic/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace adelic {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- cores

std::optional<Core> core_of(const RingExpr& carrier) {
  RingExpr e = rewrite(carrier);
  std::vector<RingExpr> chain;  // outermost first
  RingExpr cur = e;
  while (cur.kind() == ExprKind::Localize || cur.kind() == ExprKind::Invert || cur.kind() == ExprKind::Complete) {
    chain.push_back(cur);
    cur = cur.child();
  }
  if (cur.kind() != ExprKind::Base) return std::nullopt;
  const BaseRing& r = cur.ring();
  if (r.is_field()) return chain.empty() ? std::optional<Core>(Core::global(r)) : std::nullopt;

  if (r.kind == RingKind::BivariatePoly) {
    if (chain.empty()) return Core::global(r);
    if (chain.size() == 1 && chain[0].kind() == ExprKind::Localize && chain[0].at().prime) {
      const AlgPrime& p = *chain[0].at().prime;
      return p.is_zero() ? Core::fraction(r) : Core::local(r, {p});
    }
    if (chain.size() == 2 && chain[0].kind() == ExprKind::Complete && chain[1].kind() == ExprKind::Localize &&
        chain[0].at() == chain[1].at() && chain[0].at().prime)
      return Core::local(r, {*chain[0].at().prime}, true);
    return std::nullopt;
  }

  bool fraction = false, completed = false;
  std::optional<std::vector<AlgPrime>> local;
  std::vector<Poly> inverted;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (!it->at().prime && it->kind() != ExprKind::Invert) return std::nullopt;
    if (completed) return std::nullopt;
    switch (it->kind()) {
      case ExprKind::Localize: {
        const AlgPrime& p = *it->at().prime;
        if (fraction) break;
        if (p.is_zero()) {
          fraction = true;
        } else if (local) {
          if (std::find(local->begin(), local->end(), p) == local->end()) fraction = true;
          else local = std::vector<AlgPrime>{p};
        } else if (std::any_of(inverted.begin(), inverted.end(), [&](const Poly& f) { return p.contains(f); })) {
          fraction = true;
        } else {
          local = std::vector<AlgPrime>{p};
        }
        break;
      }
      case ExprKind::Invert: {
        if (fraction) break;
        if (local) {
          std::erase_if(*local, [&](const AlgPrime& p) {
            return std::any_of(it->inverted().begin(), it->inverted().end(), [&](const Poly& f) { return p.contains(f); });
          });
          if (local->empty()) fraction = true;
        } else {
          inverted.insert(inverted.end(), it->inverted().begin(), it->inverted().end());
        }
        break;
      }
      case ExprKind::Complete: {
        const AlgPrime& m = *it->at().prime;
        if (!local || local->size() != 1 || !(local->front() == m)) return std::nullopt;
        completed = true;
        break;
      }
      default: return std::nullopt;
    }
  }
  if (fraction) return Core::fraction(r);
  if (local) return Core::local(r, *local, completed);
  if (r.is_semilocal() && !inverted.empty()) {
    // Z_S[1/f] is the semilocalization at the primes of S not dividing f.
    std::vector<AlgPrime> keep;
    for (const auto& p : r.local_primes) {
      AlgPrime ap = AlgPrime::make(r, {Poly(Rat(p))});
      if (std::none_of(inverted.begin(), inverted.end(), [&](const Poly& f) { return ap.contains(f); }))
        keep.push_back(ap);
    }
    if (keep.empty()) return Core::fraction(r);
    return Core::local(r, keep);
  }
  std::sort(inverted.begin(), inverted.end(), [](const Poly& a, const Poly& b) { return a.str() < b.str(); });
  inverted.erase(std::unique(inverted.begin(), inverted.end()), inverted.end());
  return Core::global(r, inverted);
}

std::vector<HomologyGroup> homology_over(const BoundedComplex& c, const Core& core, int degree_cap) {
  std::vector<HomologyGroup> out;
  if (c.empty()) return out;
  for (int n = c.lo(); n <= c.hi(); ++n) out.push_back(homology_invariants(c.diff(n - 1), c.diff(n), core, n, degree_cap));
  return out;
}

std::vector<HomologyGroup> homology(const BoundedComplex& c, int degree_cap) {
  if (c.empty()) return {};
  const RingExpr* carrier = nullptr;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (const auto& g : c.gens(n)) {
      if (g.carrier.has_family())
        fail(ErrorKind::FamilyProductRemains, "homology requested over " + g.carrier.key());
      if (!carrier) carrier = &g.carrier;
      else if (!(g.carrier == *carrier))
        fail(ErrorKind::CarrierMismatch, "mixed carriers " + carrier->key() + " and " + g.carrier.key());
    }
  auto core = core_of(*carrier);
  if (!core) fail(ErrorKind::UnsupportedExpression, "no computable core for " + carrier->key());
  return homology_over(c, *core, degree_cap);
}

// ---------------------------------------------------------------- reports

const char* test_status_name(TestStatus s) {
  switch (s) {
    case TestStatus::Acyclic: return "acyclic";
    case TestStatus::NotAcyclic: return "not-acyclic";
    case TestStatus::Relative: return "relative";
  }
  return "?";
}

std::string TestReport::summary() const {
  std::string s = name + ": " + test_status_name(status);
  if (!core.empty()) s += " over " + core;
  for (const auto& h : homology) s += "; H^" + std::to_string(h.degree) + " = " + h.str();
  if (!omitted.empty()) {
    s += "; omitted:";
    for (const auto& o : omitted) s += " [" + o + "]";
  }
  return s;
}

namespace {

std::vector<HomologyGroup> nonzero_only(const std::vector<HomologyGroup>& hs) {
  std::vector<HomologyGroup> out;
  for (const auto& h : hs)
    if (!h.zero) out.push_back(h);
  return out;
}

// K_q ⊗ (carrier) may be replaced by K_q ⊗ R_q.
bool collapsible(const RingExpr& e, const AlgPrime& q) {
  switch (e.kind()) {
    case ExprKind::Base: return true;
    case ExprKind::Invert:
      return std::none_of(e.inverted().begin(), e.inverted().end(), [&](const Poly& f) { return q.contains(f); }) &&
             collapsible(e.child(), q);
    case ExprKind::Localize: return e.at().prime && *e.at().prime == q && collapsible(e.child(), q);
    case ExprKind::Complete: return e.at().prime && q.contains(*e.at().prime) && collapsible(e.child(), q);
    case ExprKind::FiniteProduct: return e.children().size() == 1 && collapsible(e.child(), q);
    default: return false;
  }
}

bool has_complete(const RingExpr& e) {
  if (e.kind() == ExprKind::Complete) return true;
  return std::any_of(e.children().begin(), e.children().end(), [](const RingExpr& c) { return has_complete(c); });
}

std::string kill_certificate(const RingExpr& carrier, const AlgPrime& q) {
  for (const auto& g : q.generators()) {
    try {
      UnitCertificate u = is_unit(g, carrier);
      if (u.verdict == UnitVerdict::Unit) return carrier.key() + ": " + g.str() + " is a unit (" + u.witness + ")";
    } catch (const Error&) {
    }
  }
  return carrier.key() + ": no surviving factor contains " + q.key();
}

// Frac(R) ⊗ (a chain of localizations and completions containing a completion at a nonzero prime
// or an infinite family product).
bool big_fraction_algebra(const RingExpr& c) {
  if (c.kind() != ExprKind::Localize || !c.at().prime || !c.at().prime->is_zero()) return false;
  bool completion = false;
  for (RingExpr e = c.child(); e.kind() != ExprKind::Base; e = e.child()) {
    if (e.kind() == ExprKind::Complete && (e.at().is_bound() || !e.at().prime->is_zero())) completion = true;
    else if (e.kind() == ExprKind::FamilyProduct) completion = true;
    else if (e.kind() != ExprKind::Localize && e.kind() != ExprKind::Invert) return false;
  }
  return completion;
}

Poly constant_inverse(const Poly& u, unsigned charp) { return Poly(Rat(1) / u.constant_term(), charp); }

}  // namespace

TestReport koszul_test(const BoundedComplex& x, const AlgPrime& q, const TestOptions& opt) {
  if (q.is_zero()) fail(ErrorKind::InvalidPrime, "K_(0) is the unit; use the generic test");
  const BaseRing& r = x.ring();
  TestReport rep;
  rep.name = "K_" + q.key();
  rep.prime = q;
  BoundedComplex t = tensor(koszul_complex(r, q.generators()), x);
  rep.generators = t.total_rank();
  if (t.empty()) return rep;

  std::map<std::string, KillResult> cache;
  std::set<std::string> certified, omitted, survivor_keys;
  bool infinite = false;
  std::map<std::pair<int, int>, bool> killed;
  for (int n = t.lo(); n <= t.hi(); ++n)
    for (int i = 0; i < t.rank(n); ++i) {
      const RingExpr& c = t.gens(n)[i].carrier;
      auto it = cache.find(c.key());
      if (it == cache.end()) it = cache.emplace(c.key(), kill_under_koszul(c, q)).first;
      const KillResult& k = it->second;
      killed[{n, i}] = k.expr.is_zero();
      if (k.expr.is_zero()) {
        ++rep.killed;
        if (certified.insert(c.key()).second) rep.certificates.push_back(kill_certificate(c, q));
      } else {
        for (const auto& s : k.survivors)
          if (survivor_keys.insert(s.key()).second) rep.survivors.push_back(s);
      }
      if (k.infinite) {
        infinite = true;
        for (const auto& o : k.omitted)
          if (omitted.insert(o).second) rep.omitted.push_back(o);
      }
    }

  // Killed generators must span a subcomplex (or a quotient complex); either way it is acyclic.
  bool sub = true, quot = true;
  for (int n = t.lo(); n < t.hi(); ++n) {
    Matrix d = t.diff(n);
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j) {
        if (d.at(i, j).is_zero()) continue;
        if (killed[{n, j}] && !killed[{n + 1, i}]) sub = false;
        if (!killed[{n, j}] && killed[{n + 1, i}]) quot = false;
      }
  }
  if (!sub && !quot) fail(ErrorKind::InvalidComplex, rep.name + ": killed generators form neither a sub- nor a quotient complex");

  BoundedComplex kept = restrict_gens(t, [&](int n, int i) { return !killed[{n, i}]; });
  kept = retag(kept, [&](const RingExpr& c) { return rewrite(cache.at(c.key()).expr); });
  if (kept.empty()) {
    rep.status = infinite ? TestStatus::Relative : TestStatus::Acyclic;
    return rep;
  }
  if (infinite) {
    rep.status = TestStatus::Relative;
    return rep;
  }
  if (!q.is_maximal() && !opt.localized) {
    rep.status = TestStatus::Relative;
    rep.omitted.push_back("closed points m ⊇ " + q.key());
    return rep;
  }
  bool completed = false;
  for (int n = kept.lo(); n <= kept.hi(); ++n)
    for (const auto& g : kept.gens(n)) {
      if (!collapsible(g.carrier, q))
        fail(ErrorKind::FamilyProductRemains, rep.name + ": cannot collapse carrier " + g.carrier.key());
      completed = completed || has_complete(g.carrier);
    }
  Core core = Core::local(r, {q}, completed);
  rep.core = core.name();
  rep.homology = nonzero_only(homology_over(kept, core, opt.degree_cap));
  rep.status = rep.homology.empty() ? TestStatus::Acyclic : TestStatus::NotAcyclic;
  return rep;
}

BoundedComplex cancel_unit_pivots(const BoundedComplex& c, int* cancelled) {
  if (c.empty()) return c;
  const unsigned cp = c.ring().charp;
  const int lo = c.lo(), hi = c.hi();
  std::vector<std::vector<Gen>> gens;
  std::vector<Matrix> d;  // d[k] : degree lo+k -> lo+k+1
  for (int n = lo; n <= hi; ++n) {
    gens.push_back(c.gens(n));
    d.push_back(c.diff(n));
  }
  auto pivot_ok = [&](const Poly& v, const RingExpr& carrier) {
    if (v.is_zero() || !v.is_constant()) return false;
    try {
      return is_unit(v, carrier).verdict == UnitVerdict::Unit;
    } catch (const Error&) {
      return false;
    }
  };
  int count = 0;
  for (bool progress = true; progress;) {
    progress = false;
    for (int k = 0; k + 1 < static_cast<int>(gens.size()) && !progress; ++k) {
      Matrix& m = d[k];
      for (int b = 0; b < m.rows && !progress; ++b)
        for (int a = 0; a < m.cols && !progress; ++a) {
          if (!(gens[k][a].carrier == gens[k + 1][b].carrier) || !pivot_ok(m.at(b, a), gens[k][a].carrier)) continue;
          const Poly uinv = constant_inverse(m.at(b, a), cp);
          // Reduced map on the complements: e - c u^{-1} b.
          Matrix nm(m.rows - 1, m.cols - 1, cp);
          for (int i = 0, ii = 0; i < m.rows; ++i) {
            if (i == b) continue;
            for (int j = 0, jj = 0; j < m.cols; ++j) {
              if (j == a) continue;
              Poly v = m.at(i, j);
              if (!m.at(i, a).is_zero() && !m.at(b, j).is_zero()) v -= m.at(i, a) * uinv * m.at(b, j);
              nm.at(ii, jj++) = v;
            }
            ++ii;
          }
          m = nm;
          if (k > 0) {  // drop row a of d[k-1]
            Matrix& p = d[k - 1];
            Matrix np(p.rows - 1, p.cols, cp);
            for (int i = 0, ii = 0; i < p.rows; ++i) {
              if (i == a) continue;
              for (int j = 0; j < p.cols; ++j) np.at(ii, j) = p.at(i, j);
              ++ii;
            }
            p = np;
          }
          {  // drop column b of d[k+1]
            Matrix& s = d[k + 1];
            Matrix ns(s.rows, s.cols - 1, cp);
            for (int i = 0; i < s.rows; ++i)
              for (int j = 0, jj = 0; j < s.cols; ++j)
                if (j != b) ns.at(i, jj++) = s.at(i, j);
            s = ns;
          }
          gens[k].erase(gens[k].begin() + a);
          gens[k + 1].erase(gens[k + 1].begin() + b);
          ++count;
          progress = true;
        }
    }
  }
  if (cancelled) *cancelled = count;
  BoundedComplex out(c.ring());
  for (int k = 0; k < static_cast<int>(gens.size()); ++k)
    for (const auto& g : gens[k]) out.add_gen(lo + k, g);
  for (int k = 0; k + 1 < static_cast<int>(gens.size()); ++k)
    if (d[k].rows && d[k].cols) out.set_diff(lo + k, d[k]);
  out.trim();
  return out;
}

TestReport generic_test(const BoundedComplex& x, const TestOptions& opt) {
  const BaseRing& r = x.ring();
  TestReport rep;
  rep.name = "L_(0)";
  rep.generators = x.total_rank();
  const AlgPrime zero = AlgPrime::zero(r);
  BoundedComplex y = retag(x, [&](const RingExpr& c) { return localize_at(c, zero); });
  rep.killed = rep.generators - y.total_rank();
  y = cancel_unit_pivots(y, &rep.cancelled);
  if (y.empty()) return rep;
  // Group the survivors by carrier. Each carrier is either Frac(R) itself or a nonzero
  // Frac(R)-algebra of infinite dimension (a localized completion).
  std::map<std::string, std::vector<std::pair<int, int>>> groups;
  std::string small;
  for (int n = y.lo(); n <= y.hi(); ++n)
    for (int i = 0; i < y.rank(n); ++i) {
      const RingExpr& c = y.gens(n)[i].carrier;
      groups[c.key()].push_back({n, i});
      auto core = core_of(c);
      if (core && core->is_field()) {
        small = c.key();
        continue;
      }
      if (!big_fraction_algebra(c)) {
        if (c.has_family())
          fail(ErrorKind::FamilyProductRemains, "generic test: " + c.key() + " survives cancellation");
        fail(ErrorKind::UnsupportedExpression, "generic test: no computable core for " + c.key());
      }
    }
  for (int n = y.lo(); n < y.hi(); ++n) {
    Matrix d = y.diff(n);
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j) {
        const std::string& s = y.gens(n)[j].carrier.key();
        const std::string& t = y.gens(n + 1)[i].carrier.key();
        if (!d.at(i, j).is_zero() && s != t && s != small)
          fail(ErrorKind::UnsupportedExpression, "generic test: map between " + s + " and " + t);
      }
  }
  // Frac(R)-carriers form a quotient complex and the others split off as subcomplexes; the
  // connecting map cannot be an isomorphism between finite and infinite dimensional spaces,
  // so X is acyclic exactly when every piece is.
  const Core frac = Core::fraction(r);
  for (const auto& [key, members] : groups) {
    std::set<std::pair<int, int>> keep(members.begin(), members.end());
    BoundedComplex piece = restrict_gens(y, [&](int n, int i) { return keep.count({n, i}) > 0; });
    for (auto h : nonzero_only(homology_over(piece, frac, opt.degree_cap))) {
      if (key != small) h.core = key;
      rep.homology.push_back(h);
    }
    rep.core += (rep.core.empty() ? "" : ", ") + (key == small ? frac.name() : key);
  }
  std::stable_sort(rep.homology.begin(), rep.homology.end(),
                   [](const HomologyGroup& a, const HomologyGroup& b) { return a.degree < b.degree; });
  rep.status = rep.homology.empty() ? TestStatus::Acyclic : TestStatus::NotAcyclic;
  return rep;
}

TestReport support_test(const BoundedComplex& x, const AlgPrime& p, const TestOptions& opt) {
  if (p.is_zero()) return generic_test(x, opt);
  BoundedComplex y = retag(x, [&](const RingExpr& c) { return localize_at(c, p); });
  TestOptions o = opt;
  o.localized = true;
  TestReport rep = koszul_test(y, p, o);
  rep.name = "K_" + p.key() + "⊗L_" + p.key();
  return rep;
}

// ---------------------------------------------------------------- batteries

std::vector<AlgPrime> prime_divisors(const BaseRing& r, const Poly& e) {
  std::vector<AlgPrime> out;
  if (e.is_zero() || r.is_field()) return out;
  if (r.kind == RingKind::Integers) {
    Rat c = e.constant_term();
    std::set<Int> ps;
    for (const auto& p : prime_factors(abs_int(mp::numerator(c)))) ps.insert(p);
    for (const auto& p : prime_factors(mp::denominator(c))) ps.insert(p);
    for (const auto& p : ps) {
      if (r.is_semilocal() && std::find(r.local_primes.begin(), r.local_primes.end(), p) == r.local_primes.end())
        continue;
      out.push_back(AlgPrime::make(r, {Poly(Rat(p))}));
    }
    return out;
  }
  if (r.kind != RingKind::UnivariatePoly) fail(ErrorKind::UnsupportedRing, "prime divisors over " + r.key());
  Poly m = e.monic();
  std::vector<Poly> factors;
  auto try_root = [&](const Rat& c) {
    if (!m.eval_x(c).is_zero()) return false;
    Poly lin = Poly::var_x(r.charp) - Poly(c, r.charp);
    while (udivmod(m, lin).second.is_zero() && !m.is_constant()) m = udivmod(m, lin).first;
    factors.push_back(lin);
    return true;
  };
  while (!m.is_constant()) {
    if (certify_irreducible_univariate(m)) {
      factors.push_back(m.monic());
      break;
    }
    bool found = false;
    if (r.charp) {
      for (unsigned c = 0; c < std::min(r.charp, 5000u) && !found; ++c) found = try_root(Rat(c));
    } else {
      // Rational roots p/q of the integer-cleared polynomial.
      Int den = 1;
      for (const auto& [mono, c] : m.terms()) den = den / gcd(den, mp::denominator(c)) * mp::denominator(c);
      Poly ip = m.scaled(Rat(den));
      Int a0 = abs_int(mp::numerator(ip.constant_term())), an = abs_int(mp::numerator(ip.lead_coeff()));
      if (a0 == 0) found = try_root(Rat(0));
      for (Int pn = 1; pn <= a0 && pn <= 2000 && !found; ++pn) {
        if (a0 % pn != 0) continue;
        for (Int qd = 1; qd <= an && qd <= 2000 && !found; ++qd) {
          if (an % qd != 0) continue;
          found = try_root(Rat(pn, qd)) || try_root(Rat(-pn, qd));
        }
      }
    }
    if (!found) fail(ErrorKind::UnsupportedExpression, "cannot factor " + m.str());
  }
  for (const auto& f : factors) out.push_back(AlgPrime::make(r, {f}));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void carrier_primes(const RingExpr& e, std::vector<AlgPrime>& out) {
  if ((e.kind() == ExprKind::Localize || e.kind() == ExprKind::Complete) && e.at().prime && !e.at().prime->is_zero())
    out.push_back(*e.at().prime);
  if (e.kind() == ExprKind::Invert)
    for (const auto& f : e.inverted()) {
      auto ps = prime_divisors(e.ring(), f);
      out.insert(out.end(), ps.begin(), ps.end());
    }
  if (e.kind() == ExprKind::FamilyProduct) {
    for (const auto& p : e.fam().except) out.push_back(p);
    if (e.fam().above && e.fam().above->prime && !e.fam().above->prime->is_zero()) out.push_back(*e.fam().above->prime);
  }
  for (const auto& c : e.children()) carrier_primes(c, out);
}

}  // namespace

std::vector<AlgPrime> battery_primes(const BoundedComplex& x) {
  const BaseRing& r = x.ring();
  std::vector<AlgPrime> out;
  if (r.is_field()) return out;
  if (r.kind == RingKind::BivariatePoly)
    fail(ErrorKind::UnsupportedRing, "no finite test battery over " + r.key() + "; use the verifier");
  if (r.is_semilocal()) {
    for (const auto& p : r.local_primes) out.push_back(AlgPrime::make(r, {Poly(Rat(p))}));
    return out;
  }
  if (!x.empty()) {
    const Core global = Core::global(r);
    for (int n = x.lo(); n <= x.hi(); ++n) {
      for (const auto& g : x.gens(n)) carrier_primes(g.carrier, out);
      Matrix d = x.diff(n);
      for (const auto& v : d.e)
        if (!v.is_zero()) {
          auto ps = prime_divisors(r, v);
          out.insert(out.end(), ps.begin(), ps.end());
        }
      bool integral = std::all_of(d.e.begin(), d.e.end(), [](const Poly& v) {
        return v.is_zero() || !v.is_constant() || mp::denominator(v.constant_term()) == 1;
      });
      if (integral && d.rows && d.cols)
        for (const auto& f : invariant_factors(d, global).factors) {
          auto ps = prime_divisors(r, f);
          out.insert(out.end(), ps.begin(), ps.end());
        }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // One representative prime outside the relevant set.
  if (r.kind == RingKind::Integers) {
    for (Int p = 2;; ++p) {
      if (!is_prime(p)) continue;
      AlgPrime ap = AlgPrime::make(r, {Poly(Rat(p))});
      if (std::find(out.begin(), out.end(), ap) == out.end()) {
        out.push_back(ap);
        break;
      }
    }
  } else {
    for (int c = 0;; ++c) {
      AlgPrime ap = AlgPrime::make(r, {Poly::var_x(r.charp) - Poly(Rat(c), r.charp)});
      if (std::find(out.begin(), out.end(), ap) == out.end()) {
        out.push_back(ap);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TestReport> test_battery(const BoundedComplex& x, const std::vector<AlgPrime>& extra,
                                     const TestOptions& opt) {
  std::vector<AlgPrime> ps = battery_primes(x);
  for (const auto& p : extra)
    if (!p.is_zero() && std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  std::vector<TestReport> out;
  for (const auto& p : ps) out.push_back(koszul_test(x, p, opt));
  out.push_back(generic_test(x, opt));
  return out;
}

bool is_acyclic(const BoundedComplex& x, const TestOptions& opt) {
  if (x.empty()) return true;
  if (x.carriers_uniform()) {
    const RingExpr& c = x.gens(x.lo()).empty() ? x.gens(x.hi())[0].carrier : x.gens(x.lo())[0].carrier;
    if (core_of(c)) {
      for (const auto& h : homology(x, opt.degree_cap))
        if (!h.zero) return false;
      return true;
    }
  }
  for (const auto& t : test_battery(x, {}, opt))
    if (!t.acyclic()) return false;
  return true;
}

bool is_quasi_iso(const ComplexMap& f, const TestOptions& opt) { return is_acyclic(cone(f), opt); }

}  // namespace adelic
