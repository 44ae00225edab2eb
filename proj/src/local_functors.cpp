#include "adelic/local_functors.hpp"

#include "adelic/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>

namespace adelic {

namespace {
std::atomic<int> g_tower_window{kTowerWindow};
// sqrt(gens) = p. In a PID the primes over (gens) are the common prime divisors.
bool same_radical(const AlgPrime& p, const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (!p.contains(g)) return false;
  const BaseRing& r = p.ring();
  if (r.is_pid()) {
    std::optional<std::vector<AlgPrime>> common;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      std::vector<AlgPrime> ds = prime_divisors(r, g);
      if (!common) {
        common = ds;
        continue;
      }
      std::vector<AlgPrime> keep;
      for (const auto& d : *common)
        if (std::find(ds.begin(), ds.end(), d) != ds.end()) keep.push_back(d);
      common = keep;
    }
    return common && common->size() == 1 && common->front() == p;
  }
  const std::vector<Poly> gb = ideal_gb(gens);
  for (const auto& b : p.basis()) {
    bool found = false;
    for (int k = 1; k <= 16 && !found; ++k) found = ideal_member(b.pow(k), gb);
    if (!found) return false;
  }
  return true;
}

}  // namespace

int tower_window() { return g_tower_window.load(); }

void set_tower_window(int k) {
  if (k < 2 || k > kTowerLevels) fail(ErrorKind::InvalidScenario, "stabilization window must lie in 2.." + std::to_string(kTowerLevels));
  g_tower_window = k;
}

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- Koszul data

KoszulData KoszulData::of(const AlgPrime& p) { return {p, p.generators()}; }

KoszulData KoszulData::with(const AlgPrime& p, std::vector<Poly> gens) {
  if (gens.empty() != p.is_zero()) fail(ErrorKind::MissingGenerators, "generators do not match " + p.key());
  if (!gens.empty() && !same_radical(p, gens))
    fail(ErrorKind::MissingGenerators, "generators do not have radical " + p.key());
  return {p, std::move(gens)};
}

BoundedComplex koszul(const KoszulData& k) { return koszul_complex(k.prime.ring(), k.generators); }

BoundedComplex gamma(const KoszulData& k, const BoundedComplex& m) {
  if (k.generators.empty()) return m;
  return tensor(stable_koszul_complex(k.prime.ring(), k.generators), m);
}

BoundedComplex gamma(const AlgPrime& p, const BoundedComplex& m) { return gamma(KoszulData::of(p), m); }

ComplexMap gamma_counit(const BoundedComplex& gm, const BoundedComplex& m) {
  // Degree n of Γ ⊗ M starts with 1 ⊗ M^n.
  ComplexMap f{gm, m, {}};
  if (m.empty()) return f;
  for (int n = m.lo(); n <= m.hi(); ++n) {
    Matrix c(m.rank(n), gm.rank(n), m.ring().charp);
    for (int i = 0; i < m.rank(n); ++i) c.at(i, i) = Poly(Rat(1), m.ring().charp);
    f.components[n] = c;
  }
  return f;
}

BoundedComplex localize(const AlgPrime& p, const BoundedComplex& m) {
  return retag(m, [&](const RingExpr& c) { return localize_at(c, p); });
}

// ---------------------------------------------------------------- helpers

namespace {

const Poly& principal_generator(const AlgPrime& p, const char* what) {
  if (!p.ring().is_pid() || p.basis().size() != 1)
    fail(ErrorKind::NotRepresentable, std::string(what) + " needs a principal prime of a PID, got " + p.key());
  return p.basis()[0];
}

Core module_core(const BoundedComplex& m) {
  if (m.empty()) return Core::global(m.ring());
  const RingExpr* c0 = nullptr;
  for (int n = m.lo(); n <= m.hi(); ++n)
    for (const auto& g : m.gens(n)) {
      if (!c0) c0 = &g.carrier;
      else if (!(g.carrier == *c0)) fail(ErrorKind::NotRepresentable, "towers need a single carrier, found " + c0->key() + " and " + g.carrier.key());
    }
  auto core = core_of(*c0);
  if (!core || !core->is_pid()) fail(ErrorKind::NotRepresentable, "no PID core for " + c0->key());
  return *core;
}

int valuation_at(Poly f, const AlgPrime& p) {
  if (f.is_zero()) return 0;
  const Poly& x = p.basis()[0];
  if (p.ring().kind == RingKind::Integers) return valuation(abs_int(mp::numerator(f.constant_term())), mp::numerator(x.constant_term()));
  int v = 0;
  for (;;) {
    auto [q, r] = udivmod(f, x);
    if (!r.is_zero()) return v;
    f = q;
    ++v;
  }
}

Poly prime_power(const AlgPrime& p, int e) {
  Poly out(Rat(1), p.ring().charp);
  for (int i = 0; i < e; ++i) out = out * p.basis()[0];
  return out;
}

Matrix kernel_basis(const Matrix& d, const Core& core, int ncols) {
  if (d.rows == 0 || d.is_zero()) return Matrix::identity(ncols, core.base.charp);
  SNF s = smith_normal_form(d, core);
  Matrix k(ncols, ncols - s.rank, core.base.charp);
  for (int i = 0; i < ncols; ++i)
    for (int j = s.rank; j < ncols; ++j) k.at(i, j - s.rank) = s.right.at(i, j);
  return k;
}

Matrix hcat(const Matrix& a, const Matrix& b, unsigned charp) {
  Matrix m(a.rows, a.cols + b.cols, charp);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) m.at(i, a.cols + j) = b.at(i, j);
  }
  return m;
}

using LevelFn = std::function<BoundedComplex(int)>;
// Matrix T_{k2}^n -> T_k^n.
using TransFn = std::function<Matrix(int n, int k, int k2)>;
using TupleFn = std::function<TowerDegree(int n, int k, const ModuleInvariants& image, const ModuleInvariants& coker)>;

TowerReport run_tower(const std::string& name, const Core& core, const LevelFn& level, const TransFn& trans,
                      const TupleFn& tuple) {
  TowerReport rep;
  rep.name = name;
  std::map<int, BoundedComplex> cache;
  auto at = [&](int k) -> const BoundedComplex& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, level(k)).first;
    return it->second;
  };
  std::vector<std::vector<TowerDegree>> history;
  for (int k = 1; k <= kTowerLevels; ++k) {
    const BoundedComplex& tk = at(k);
    const BoundedComplex& t2 = at(2 * k);
    std::vector<TowerDegree> tup;
    if (!tk.empty()) {
      for (int n = tk.lo(); n <= tk.hi(); ++n) {
        if (tk.rank(n) == 0) continue;
        Matrix z2 = kernel_basis(t2.diff(n), core, t2.rank(n));
        Matrix img = matmul(trans(n, k, 2 * k), z2);
        Matrix b = tk.diff(n - 1);
        Matrix l = hcat(img, b, core.base.charp);
        ModuleInvariants im = subquotient_invariants(l, b, core);
        ModuleInvariants ck = subquotient_invariants(kernel_basis(tk.diff(n), core, tk.rank(n)), l, core);
        TowerDegree td = tuple(n, k, im, ck);
        if (!td.zero() || !td.cokernel.empty() || td.cokernel_rank) tup.push_back(td);
      }
    }
    history.push_back(tup);
    rep.levels = 2 * k;
    const int h = static_cast<int>(history.size());
    const int window = tower_window();
    if (h >= window &&
        std::all_of(history.end() - window, history.end(), [&](const auto& t) { return t == history.back(); })) {
      rep.stable = true;
      rep.stable_from = k - window + 1;
      for (const auto& td : history.back())
        if (!td.zero()) rep.limit.push_back(td);
      return rep;
    }
  }
  rep.note = "images did not stabilize within " + std::to_string(kTowerLevels) + " levels";
  return rep;
}

}  // namespace

// ---------------------------------------------------------------- reports

std::string GammaDegree::str() const {
  std::string s = "H^" + std::to_string(degree) + ":";
  if (zero()) return s + " 0";
  for (const auto& t : torsion) s += " " + ring + "/(" + t.str() + ")";
  if (divisible_rank) {
    s += " " + ring + "[1/" + inverted.str() + "]/" + ring;
    if (divisible_rank > 1) s += "^" + std::to_string(divisible_rank);
  }
  return s;
}

std::vector<GammaDegree> gamma_report(const AlgPrime& p, const BoundedComplex& m) {
  const Poly& x = principal_generator(p, "gamma_report");
  std::vector<GammaDegree> out;
  if (m.empty()) return out;
  Core core = module_core(m);
  const bool unit = core.is_field() || is_core_unit(x, core);
  auto hs = homology(m);
  for (int n = m.lo(); n <= m.hi() + 1; ++n) {
    GammaDegree g;
    g.degree = n;
    g.ring = m.ring().key();
    g.inverted = x;
    if (!unit) {
      if (n <= m.hi())
        for (const auto& t : hs[n - m.lo()].torsion)
          if (int v = valuation_at(t, p); v > 0) g.torsion.push_back(prime_power(p, v));
      if (n - 1 >= m.lo()) g.divisible_rank = hs[n - 1 - m.lo()].free_rank;
    }
    if (!g.zero()) out.push_back(g);
  }
  return out;
}

bool TowerDegree::operator==(const TowerDegree& o) const {
  return degree == o.degree && rank == o.rank && torsion == o.torsion && cokernel == o.cokernel &&
         cokernel_rank == o.cokernel_rank;
}

std::string TowerDegree::str() const {
  std::string body;
  if (rank) body = "rank " + std::to_string(rank);
  for (const auto& t : torsion) body += (body.empty() ? "" : " ⊕ ") + ("/(" + t.str() + ")");
  return "H^" + std::to_string(degree) + ": " + (body.empty() ? "0" : body);
}

std::string TowerReport::str() const {
  std::string s = name + ": ";
  if (!stable) return s + "unstable (" + note + ")";
  if (limit.empty()) return s + "0";
  for (size_t i = 0; i < limit.size(); ++i) s += (i ? "; " : "") + limit[i].str();
  return s;
}

// ---------------------------------------------------------------- Λ

TowerReport completion_tower(const AlgPrime& p, const BoundedComplex& m) {
  const Poly& x = principal_generator(p, "completion");
  const Core core = module_core(m);
  const unsigned cp = m.ring().charp;
  auto level = [&](int k) {
    BoundedComplex c(m.ring());
    c.add_gen(0, {RingExpr::base(m.ring()), "1"});
    c.add_gen(1, {RingExpr::base(m.ring()), "x^k"});
    Matrix d(1, 1, cp);
    d.at(0, 0) = prime_power(p, k);
    c.set_diff(0, d);
    return hom_complex(c, m);
  };
  // Hom(C_{k2}, M)^n -> Hom(C_k, M)^n: identity on Hom(C^0, M^n), x^{k2-k} on Hom(C^1, M^{n+1}).
  auto trans = [&](int n, int k, int k2) {
    const int a = m.rank(n), b = m.rank(n + 1);
    Matrix t(a + b, a + b, cp);
    Poly s = prime_power(p, k2 - k);
    for (int i = 0; i < a; ++i) t.at(i, i) = Poly(Rat(1), cp);
    for (int i = 0; i < b; ++i) t.at(a + i, a + i) = s;
    return t;
  };
  auto tuple = [&](int n, int k, const ModuleInvariants& im, const ModuleInvariants&) {
    TowerDegree td;
    td.degree = n;
    td.rank = im.free_rank;
    for (const auto& f : im.torsion) {
      int v = valuation_at(f, p);
      if (v >= k) ++td.rank;
      else if (v > 0) td.torsion.push_back(prime_power(p, v));
    }
    return td;
  };
  (void)x;
  TowerReport rep = run_tower("Λ_" + p.key(), core, level, trans, tuple);
  for (auto& td : rep.limit) td.cokernel.clear();
  return rep;
}

BoundedComplex complete(const AlgPrime& p, const BoundedComplex& m) {
  if (p.is_zero() || m.empty()) return m;
  TowerReport t = completion_tower(p, m);
  if (!t.stable) fail(ErrorKind::NotRepresentable, t.str());
  if (t.zero()) return BoundedComplex::zero(m.ring());
  BoundedComplex tagged = retag(m, [&](const RingExpr& c) { return rewrite(RingExpr::complete(c, PrimeRef::of(p))); });
  try {
    std::vector<TowerDegree> seen;
    for (const auto& h : homology(tagged)) {
      if (h.zero) continue;
      TowerDegree td;
      td.degree = h.degree;
      td.rank = h.free_rank;
      td.torsion = h.torsion;
      seen.push_back(td);
    }
    if (seen == t.limit) return tagged;
  } catch (const Error&) {
  }
  // Minimal model: completed free summands and two-term torsion pieces.
  const RingExpr carrier = rewrite(RingExpr::complete(RingExpr::base(m.ring()), PrimeRef::of(p)));
  BoundedComplex out(m.ring());
  std::vector<std::tuple<int, int, int, Poly>> entries;  // (degree of source, src, tgt, value)
  std::map<int, int> count;
  for (const auto& td : t.limit) {
    for (int i = 0; i < td.rank; ++i) out.add_gen(td.degree, {carrier, "e" + std::to_string(count[td.degree]++)});
    for (const auto& f : td.torsion) {
      int src = count[td.degree - 1]++, tgt = count[td.degree]++;
      out.add_gen(td.degree - 1, {carrier, "t" + std::to_string(src)});
      out.add_gen(td.degree, {carrier, "t" + std::to_string(tgt)});
      entries.emplace_back(td.degree - 1, src, tgt, f);
    }
  }
  for (const auto& [n, src, tgt, f] : entries) out.diff_ref(n).at(tgt, src) = f;
  out.validate();
  return out;
}

// ---------------------------------------------------------------- V

namespace {

// s_k with R_p = colim(R --s_1--> R --s_2/s_1--> ...), for rings where this is computable.
std::function<Int(int)> v_multipliers(const AlgPrime& p) {
  const BaseRing& r = p.ring();
  if (r.is_field()) return [](int) { return Int(1); };
  if (r.kind != RingKind::Integers) fail(ErrorKind::NotRepresentable, "V towers are built over Z and Z_S only");
  if (r.is_semilocal()) {
    Int base = 1;
    for (const auto& q : r.local_primes)
      if (!p.contains(Poly(Rat(q)))) base *= q;
    return [base](int k) { return mp::pow(base, k); };
  }
  if (p.is_zero()) return [](int k) {
      Int f = 1;
      for (int j = 2; j <= k; ++j) f *= j;
      return f;
    };
  Int q = mp::numerator(p.basis()[0].constant_term());
  return [q](int k) {
    Int f = 1;
    for (int j = 2; j <= k; ++j)
      if (j % q != 0) f *= j;
    return f;
  };
}

}  // namespace

TowerReport v_tower(const AlgPrime& p, const BoundedComplex& m) {
  auto s = v_multipliers(p);
  const Core core = module_core(m);
  const unsigned cp = m.ring().charp;
  auto level = [&](int) { return m; };
  auto trans = [&](int n, int k, int k2) {
    Matrix t = Matrix::identity(m.rank(n), cp);
    Poly f(Rat(s(k2) / s(k)), cp);
    for (auto& e : t.e)
      if (!e.is_zero()) e = f;
    return t;
  };
  auto tuple = [&](int n, int, const ModuleInvariants& im, const ModuleInvariants& ck) {
    TowerDegree td;
    td.degree = n;
    td.rank = im.free_rank;
    td.torsion = im.torsion;
    td.cokernel = ck.torsion;
    td.cokernel_rank = ck.free_rank;
    return td;
  };
  return run_tower("V_" + p.key(), core, level, trans, tuple);
}

VResult v_functor(const AlgPrime& p, const BoundedComplex& m) {
  VResult v;
  if (m.empty()) {
    v.description = "0";
    return v;
  }
  if (p.ring().kind == RingKind::UnivariatePoly && p.is_zero()) {
    // Hom(k(x), -) kills f.g. torsion; free summands leave a nonzero Ext^1 unless the core is complete.
    Core core = module_core(m);
    v.tower.name = "V_(0)";
    for (const auto& h : homology(m)) {
      if (core.is_field() && !h.zero) v.zero = false;
      if (!core.is_field() && !core.completed && h.free_rank > 0) v.zero = false;
    }
    v.description = v.zero ? "0" : "nonzero (structural: free summand over " + core.name() + ")";
    return v;
  }
  v.tower = v_tower(p, m);
  if (!v.tower.stable) {
    v.zero = false;
    v.description = "nonzero: images never stabilize, lim^1 ≠ 0";
  } else {
    v.zero = v.tower.zero();
    v.description = v.tower.str();
  }
  return v;
}

// ---------------------------------------------------------------- support

std::string SupportReport::str() const {
  std::string s = "supp = " + primes_str(support) + ", cosupp = " + primes_str(cosupport);
  if (!undecided.empty()) s += ", undecided = " + primes_str(undecided);
  return s;
}

bool cosupport_at(const AlgPrime& p, const BoundedComplex& m, std::string* witness) {
  if (p.is_zero()) {
    VResult v = v_functor(p, m);
    if (witness) *witness = v.description;
    return !v.zero;
  }
  if (!p.is_maximal()) fail(ErrorKind::NotRepresentable, "cosupport at the non-maximal prime " + p.key());
  TowerReport t = completion_tower(p, m);
  if (!t.stable) fail(ErrorKind::NotRepresentable, t.str());
  if (witness) *witness = t.str();
  return !t.zero();
}

SupportReport support(const BoundedComplex& m, const SpectrumPoset& poset) {
  SupportReport rep;
  for (const auto& p : poset.primes()) {
    TestReport t = support_test(m, p);
    if (t.status == TestStatus::Relative) {
      rep.undecided.push_back(p);
    } else if (!t.acyclic()) {
      rep.support.push_back(p);
      rep.witnesses["supp " + p.key()] = t.summary();
    }
  }
  rep.acyclic = rep.support.empty() && rep.undecided.empty();
  return rep;
}

SupportReport support_and_cosupport(const BoundedComplex& m, const SpectrumPoset& poset) {
  SupportReport rep = support(m, poset);
  for (const auto& p : poset.primes()) {
    std::string w;
    try {
      if (cosupport_at(p, m, &w)) {
        rep.cosupport.push_back(p);
        rep.witnesses["cosupp " + p.key()] = w;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotRepresentable) throw;
      if (std::find(rep.undecided.begin(), rep.undecided.end(), p) == rep.undecided.end()) rep.undecided.push_back(p);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- dimension filtration

DimFiltration dim_filtration(const BoundedComplex& m, int i, const SpectrumPoset& poset) {
  DimFiltration f;
  f.i = i;
  for (const auto& p : poset.primes())
    if (poset.dim(p) <= i) f.family.push_back(p);
  std::vector<AlgPrime> maximal;
  for (const auto& q : f.family) {
    bool top = std::none_of(f.family.begin(), f.family.end(), [&](const AlgPrime& p) { return !(p == q) && q.contains(p); });
    if (top) maximal.push_back(q);
  }
  const bool everything = std::any_of(maximal.begin(), maximal.end(), [](const AlgPrime& q) { return q.is_zero(); });
  if (everything) {
    f.low = m;
    f.to_m = identity_map(m);
  } else {
    std::vector<Poly> gens{m.ring().one()};
    for (const auto& q : maximal) {
      std::vector<Poly> next;
      for (const auto& a : gens)
        for (const auto& g : q.generators()) next.push_back(a * g);
      gens = next;
    }
    f.generators = gens;
    f.low = tensor(stable_koszul_complex(m.ring(), gens), m);
    f.to_m = gamma_counit(f.low, m);
    f.to_m.validate();
  }
  f.high = cone(f.to_m);
  // No prime of dimension > i may lie in the support of M_{≤i}.
  f.support_checked = true;
  for (const auto& p : poset.primes()) {
    if (poset.dim(p) <= i) continue;
    try {
      TestReport t = support_test(f.low, p);
      if (t.status == TestStatus::NotAcyclic)
        fail(ErrorKind::InvalidComplex, "M_{≤" + std::to_string(i) + "} is supported at " + p.key());
      if (t.status == TestStatus::Relative) f.support_checked = false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidComplex) throw;
      f.support_checked = false;
    }
  }
  return f;
}

std::string fingerprint(const BoundedComplex& x, const std::vector<AlgPrime>& primes) {
  std::string s;
  auto add = [&](const std::function<TestReport()>& run) {
    try {
      s += run().summary() + "\n";
    } catch (const Error& e) {
      s += std::string("error ") + e.what() + "\n";
    }
  };
  for (const auto& p : primes)
    if (!p.is_zero()) add([&] { return support_test(x, p); });
  add([&] { return generic_test(x); });
  return s;
}

}  // namespace adelic
