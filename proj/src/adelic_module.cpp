#include "adelic/adelic_module.hpp"

#include "adelic/local_functors.hpp"

#include <algorithm>
#include <set>

namespace adelic {

// ---------------------------------------------------------------- ring cubes

RingCube RingCube::adelic(const CubeDiagram& cube) {
  RingCube rc;
  rc.base = cube.poset.ring();
  rc.r = cube.r;
  rc.poset = cube.poset;
  for (size_t v = 1; v < cube.vertices.size(); ++v) {
    const CubeVertex& cv = cube.vertices[v];
    rc.flags.push_back(cv.flag);
    rc.names.push_back(cv.flag.str());
    std::vector<RingExpr> fs;
    std::vector<std::string> ls;
    for (const auto& b : cv.blocks) {
      fs.push_back(b.carrier);
      ls.push_back(b.key());
    }
    rc.factors.push_back(fs);
    rc.factor_labels.push_back(ls);
    std::vector<std::vector<int>> src;
    if (cv.flag.size() >= 2)
      for (int i = 0; i < cv.flag.size(); ++i) {
        std::vector<int> per;
        for (int b = 0; b < static_cast<int>(cv.blocks.size()); ++b) per.push_back(cube.source_block(cv.flag, i, b));
        src.push_back(per);
      }
    rc.face_source.push_back(src);
    rc.display.push_back(static_cast<int>(v) - 1);
  }
  return rc;
}

RingCube RingCube::cospan(const BaseRing& base, const RingExpr& left, const RingExpr& corner, const RingExpr& right,
                          const std::vector<std::string>& names) {
  if (names.size() != 3) fail(ErrorKind::InvalidScenario, "a cospan needs three vertex names");
  if (!maps_to(left, corner) || !maps_to(right, corner))
    fail(ErrorKind::InvalidScenario, "no structural maps " + left.key() + " -> " + corner.key() + " <- " + right.key());
  RingCube rc;
  rc.base = base;
  rc.r = 1;
  rc.flags = all_flags(1);  // (1), (0), (1>0)
  rc.names = {names[0], names[2], names[1]};
  rc.factors = {{left}, {right}, {corner}};
  rc.factor_labels = {{names[0]}, {names[2]}, {names[1]}};
  rc.face_source = {{}, {}, {{0}, {0}}};
  rc.display = {0, 2, 1};
  return rc;
}

int RingCube::index(const Flag& f) const {
  for (int v = 0; v < size(); ++v)
    if (flags[v] == f) return v;
  fail(ErrorKind::InvalidScenario, "no vertex " + f.str());
}

int RingCube::factor_of(int v, const RingExpr& carrier) const {
  for (int b = 0; b < static_cast<int>(factors[v].size()); ++b)
    if (factors[v][b] == carrier) return b;
  return -1;
}

int RingCube::dim_of(const AlgPrime& p) const {
  if (poset && poset->contains(p)) return poset->dim(p);
  return p.dim();
}

// ---------------------------------------------------------------- modules

void AdelicModule::validate() const {
  if (static_cast<int>(modules.size()) != rings.size() || static_cast<int>(faces.size()) != rings.size())
    fail(ErrorKind::InvalidScenario, "module has the wrong number of vertices");
  for (int v = 0; v < rings.size(); ++v) {
    const int want = rings.flags[v].size() >= 2 ? rings.flags[v].size() : 0;
    if (static_cast<int>(faces[v].size()) != want)
      fail(ErrorKind::InvalidScenario, "vertex " + rings.names[v] + " needs " + std::to_string(want) + " face maps");
    for (const auto& f : faces[v]) f.validate();
  }
}

std::string AdelicModule::str() const {
  std::string s;
  for (int k : rings.display) s += rings.names[k] + ":\n" + modules[k].str();
  return s;
}

namespace {

// Block of each generator of X(v) (by carrier); throws when a carrier is not a factor.
std::vector<int> gen_factors(const AdelicModule& x, int v, int n) {
  std::vector<int> out;
  for (const auto& g : x.modules[v].gens(n)) {
    const int b = x.rings.factor_of(v, g.carrier);
    if (b < 0) fail(ErrorKind::NotRepresentable, "carrier " + g.carrier.key() + " is not a factor of " + x.rings.names[v]);
    out.push_back(b);
  }
  return out;
}

int range_lo(const std::vector<BoundedComplex>& cs) {
  int lo = 0;
  bool any = false;
  for (const auto& c : cs)
    if (!c.empty()) lo = any ? std::min(lo, c.lo()) : c.lo(), any = true;
  return lo;
}

int range_hi(const std::vector<BoundedComplex>& cs) {
  int hi = -1;
  bool any = false;
  for (const auto& c : cs)
    if (!c.empty()) hi = any ? std::max(hi, c.hi()) : c.hi(), any = true;
  return hi;
}

struct Extension {
  BoundedComplex complex;
  // pos[n][k]: (target factor, source generator k) for each generator of the extension
  std::map<int, std::vector<std::pair<int, int>>> pos;
};

Extension extension(const AdelicModule& x, int v, int i) {
  const Flag& f = x.rings.flags[v];
  const int s = x.rings.index(f.without(i));
  const BoundedComplex& src = x.modules[s];
  const unsigned cp = x.rings.base.charp;
  Extension e;
  e.complex = BoundedComplex(x.rings.base);
  if (src.empty()) return e;
  const auto& fsrc = x.rings.face_source.at(v).at(i);
  for (int n = src.lo(); n <= src.hi(); ++n) {
    std::vector<int> sf = gen_factors(x, s, n);
    for (int b = 0; b < static_cast<int>(fsrc.size()); ++b)
      for (int k = 0; k < static_cast<int>(sf.size()); ++k)
        if (sf[k] == fsrc[b]) {
          e.complex.add_gen(n, {x.rings.factors[v][b], src.gens(n)[k].label});
          e.pos[n].push_back({b, k});
        }
  }
  for (int n = src.lo(); n < src.hi(); ++n) {
    Matrix d = src.diff(n);
    const auto& rows = e.pos[n + 1];
    const auto& cols = e.pos[n];
    Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()), cp);
    for (size_t a = 0; a < rows.size(); ++a)
      for (size_t c = 0; c < cols.size(); ++c)
        if (rows[a].first == cols[c].first) out.at(a, c) = d.at(rows[a].second, cols[c].second);
    e.complex.set_diff(n, out);
  }
  return e;
}

ComplexMap zero_map(const BoundedComplex& a, const BoundedComplex& b) { return ComplexMap{a, b, {}}; }

std::string describe_homology(const std::vector<HomologyGroup>& hs) {
  std::vector<const HomologyGroup*> nz;
  for (const auto& h : hs)
    if (!h.zero) nz.push_back(&h);
  if (nz.empty()) return "0";
  if (nz.size() == 1 && nz[0]->degree == 0) return nz[0]->str();
  std::string s;
  for (auto* h : nz) s += (s.empty() ? "" : ", ") + ("H^" + std::to_string(h->degree) + " = " + h->str());
  return s;
}

std::string factor_summary(const BoundedComplex& c, const std::vector<AlgPrime>& primes, const TestOptions& opt) {
  if (c.total_rank() == 0) return "0";
  const RingExpr& carrier = c.gens(c.lo()).empty() ? c.gens(c.hi())[0].carrier : c.gens(c.lo())[0].carrier;
  if (c.carriers_uniform() && core_of(carrier)) return describe_homology(homology(c, opt.degree_cap));
  bool zero_diff = true;
  for (int n = c.lo(); n < c.hi(); ++n) zero_diff = zero_diff && c.diff(n).is_zero();
  if (zero_diff && c.carriers_uniform()) {
    std::string s;
    for (int n = c.lo(); n <= c.hi(); ++n) {
      if (!c.rank(n)) continue;
      std::string part = carrier.key() + (c.rank(n) > 1 ? "^" + std::to_string(c.rank(n)) : "");
      s += (s.empty() ? "" : ", ") + (n == 0 ? part : "H^" + std::to_string(n) + " = " + part);
    }
    return s;
  }
  for (const auto& t : reduction_tests(c, primes, opt)) {
    if (t.status == TestStatus::NotAcyclic) return "nonzero (" + t.summary() + ")";
    if (t.status == TestStatus::Relative) return "undecided (" + t.summary() + ")";
  }
  return "0";
}

std::string summary_with(const AdelicModule& x, int v, const std::vector<AlgPrime>& primes, const TestOptions& opt) {
  const BoundedComplex& c = x.modules[v];
  if (c.empty() || c.total_rank() == 0) return "0";
  // Group generators by factor; carriers outside the factor list form their own groups.
  std::vector<std::string> keys;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (const auto& g : c.gens(n))
      if (std::find(keys.begin(), keys.end(), g.carrier.key()) == keys.end()) keys.push_back(g.carrier.key());
  std::vector<std::string> parts;
  for (const auto& key : keys) {
    BoundedComplex sub = restrict_gens(c, [&](int n, int i) { return c.gens(n)[i].carrier.key() == key; });
    std::string d = factor_summary(sub, primes, opt);
    if (d == "0") continue;
    std::string label = key;
    for (int b = 0; b < static_cast<int>(x.rings.factors[v].size()); ++b)
      if (x.rings.factors[v][b].key() == key) label = x.rings.factor_labels[v][b];
    parts.push_back(keys.size() == 1 ? d : d + " at " + label);
  }
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ", ") + p;
  return s;
}

BoundedComplex totalize(const AdelicModule& x) {
  const int nv = x.rings.size();
  const unsigned cp = x.rings.base.charp;
  BoundedComplex out(x.rings.base);
  const int lo = range_lo(x.modules), hi = range_hi(x.modules);
  if (hi < lo) return out;
  const int tlo = lo, thi = hi + x.rings.r;
  std::vector<std::map<int, int>> offset(nv);
  for (int N = tlo; N <= thi; ++N) {
    int k = 0;
    for (int v = 0; v < nv; ++v) {
      offset[v][N] = k;
      for (const auto& g : x.modules[v].gens(N - x.rings.flags[v].size() + 1)) {
        out.add_gen(N, {g.carrier, x.rings.names[v] + ":" + g.label});
        ++k;
      }
    }
  }
  if (out.empty()) return out;
  for (int N = tlo; N < thi; ++N) {
    Matrix d(out.rank(N + 1), out.rank(N), cp);
    auto put = [&](const Matrix& m, int r0, int c0, bool neg) {
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
          if (!m.at(i, j).is_zero()) d.at(r0 + i, c0 + j) = neg ? -m.at(i, j) : m.at(i, j);
    };
    for (int v = 0; v < nv; ++v) {
      const Flag& f = x.rings.flags[v];
      const int t = f.size();
      const int n = N - t + 1;
      put(x.modules[v].diff(n), offset[v][N + 1], offset[v][N], t % 2 == 1);
      if (t < 2) continue;
      for (int i = 0; i < t; ++i) {
        const int w = x.rings.index(f.without(i));
        put(x.faces[v][i].component(n + 1), offset[v][N + 1], offset[w][N], i % 2 == 1);
      }
    }
    out.set_diff(N, d);
  }
  out.trim();
  return out;
}

}  // namespace

BoundedComplex extend_scalars(const AdelicModule& x, int v, int i) { return extension(x, v, i).complex; }

ComplexMap base_change(const AdelicModule& x, int v, int i) {
  Extension e = extension(x, v, i);
  const BoundedComplex& tgt = x.modules[v];
  ComplexMap m{e.complex, tgt, {}};
  const int lo = std::min(e.complex.empty() ? 0 : e.complex.lo(), tgt.empty() ? 0 : tgt.lo());
  const int hi = std::max(e.complex.empty() ? 0 : e.complex.hi(), tgt.empty() ? 0 : tgt.hi());
  for (int n = lo; n <= hi; ++n) {
    Matrix f = x.faces[v][i].component(n);
    std::vector<int> tf = tgt.rank(n) ? gen_factors(x, v, n) : std::vector<int>{};
    const auto& cols = e.pos[n];
    Matrix out(tgt.rank(n), static_cast<int>(cols.size()), x.rings.base.charp);
    for (int r = 0; r < out.rows; ++r)
      for (size_t c = 0; c < cols.size(); ++c)
        if (tf[r] == cols[c].first) out.at(r, c) = f.at(r, cols[c].second);
    m.components[n] = out;
  }
  return m;
}

LawReport check_module_law(const AdelicModule& x) {
  LawReport rep;
  const int lo = range_lo(x.modules), hi = range_hi(x.modules);
  for (int v = 0; v < x.rings.size(); ++v) {
    const Flag& f = x.rings.flags[v];
    if (f.size() < 3) continue;
    for (int a = 0; a < f.size(); ++a)
      for (int b = a + 1; b < f.size(); ++b) {
        LawCheck c{f, a, b, false, true, ""};
        const int va = x.rings.index(f.without(a)), vb = x.rings.index(f.without(b));
        for (int n = lo; n <= hi && c.ok; ++n) {
          Matrix lhs = matmul(x.faces[v][a].component(n), x.faces[va][b - 1].component(n));
          Matrix rhs = matmul(x.faces[v][b].component(n), x.faces[vb][a].component(n));
          if (!(lhs == rhs)) {
            c.ok = false;
            c.witness = "degree " + std::to_string(n) + ": " + lhs.str() + " vs " + rhs.str();
          }
        }
        if (!c.ok) ++rep.violations;
        rep.checks.push_back(c);
      }
  }
  return rep;
}

std::vector<AlgPrime> module_test_primes(const AdelicModule& x) {
  const BaseRing& r = x.rings.base;
  std::set<AlgPrime> ps;
  if (x.rings.poset)
    for (const auto& p : x.rings.poset->primes())
      if (!p.is_zero()) ps.insert(p);
  if (!r.is_field() && r.kind != RingKind::BivariatePoly) {
    auto scan = [&](const Matrix& m) {
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
          if (!m.at(i, j).is_zero())
            for (const auto& p : prime_divisors(r, m.at(i, j))) ps.insert(p);
    };
    for (const auto& c : x.modules)
      if (!c.empty())
        for (int n = c.lo(); n < c.hi(); ++n) scan(c.diff(n));
    for (const auto& fs : x.faces)
      for (const auto& f : fs)
        for (const auto& [n, m] : f.components) scan(m);
  }
  std::vector<AlgPrime> out(ps.begin(), ps.end());
  if (auto rep = representative_closed_point(r, out)) out.push_back(*rep);
  return out;
}

AdelicModule tensor_up(const BoundedComplex& m, const RingCube& rings) {
  if (!m.empty())
    for (int n = m.lo(); n <= m.hi(); ++n)
      for (const auto& g : m.gens(n))
        if (g.carrier.kind() != ExprKind::Base)
          fail(ErrorKind::NotRepresentable, "tensor_up needs a complex over the base ring, found " + g.carrier.key());
  const unsigned cp = rings.base.charp;
  AdelicModule x;
  x.rings = rings;
  for (int v = 0; v < rings.size(); ++v) {
    BoundedComplex c(rings.base);
    if (!m.empty()) {
      for (int n = m.lo(); n <= m.hi(); ++n)
        for (size_t b = 0; b < rings.factors[v].size(); ++b)
          for (const auto& g : m.gens(n)) c.add_gen(n, {rings.factors[v][b], rings.factor_labels[v][b] + ":" + g.label});
      const int nb = static_cast<int>(rings.factors[v].size());
      for (int n = m.lo(); n < m.hi(); ++n) {
        Matrix d = m.diff(n);
        Matrix out(nb * d.rows, nb * d.cols, cp);
        for (int b = 0; b < nb; ++b)
          for (int i = 0; i < d.rows; ++i)
            for (int j = 0; j < d.cols; ++j) out.at(b * d.rows + i, b * d.cols + j) = d.at(i, j);
        c.set_diff(n, out);
      }
    }
    x.modules.push_back(c);
  }
  for (int v = 0; v < rings.size(); ++v) {
    std::vector<ComplexMap> fs;
    const Flag& f = rings.flags[v];
    if (f.size() >= 2)
      for (int i = 0; i < f.size(); ++i) {
        const int w = rings.index(f.without(i));
        ComplexMap fm{x.modules[w], x.modules[v], {}};
        if (!m.empty())
          for (int n = m.lo(); n <= m.hi(); ++n) {
            const int k = m.rank(n);
            Matrix out(x.modules[v].rank(n), x.modules[w].rank(n), cp);
            for (size_t b = 0; b < rings.factors[v].size(); ++b) {
              const int sb = rings.face_source[v][i][b];
              for (int j = 0; j < k; ++j) out.at(static_cast<int>(b) * k + j, sb * k + j) = Poly(Rat(1), cp);
            }
            fm.components[n] = out;
          }
        fs.push_back(fm);
      }
    x.faces.push_back(fs);
  }
  return x;
}

AdelicModule tensor_up(const BoundedComplex& m, const SpectrumPoset& poset) {
  return tensor_up(m, RingCube::adelic(build_adelic_cube(BoundedComplex::unit(poset.ring()), poset)));
}

CocartesianStatus is_cocartesian(const AdelicModule& x, const TestOptions& opt) {
  CocartesianStatus st;
  const std::vector<AlgPrime> primes = module_test_primes(x);
  for (int v = 0; v < x.rings.size(); ++v) {
    const Flag& f = x.rings.flags[v];
    if (f.size() < 2) continue;
    for (int i = 0; i < f.size(); ++i) {
      CocartesianFace cf;
      cf.target = f;
      cf.face = i;
      cf.tests = reduction_tests(cone(base_change(x, v, i)), primes, opt);
      cf.quasi_iso = true;
      for (const auto& t : cf.tests)
        if (!t.acyclic()) {
          cf.quasi_iso = false;
          if (cf.witness.empty()) cf.witness = t.summary();
        }
      st.cocartesian = st.cocartesian && cf.quasi_iso;
      st.faces.push_back(cf);
    }
  }
  return st;
}

std::string CocartesianStatus::str() const {
  std::string s = cocartesian ? "cocartesian\n" : "not cocartesian\n";
  for (const auto& f : faces) {
    s += "  face " + std::to_string(f.face) + " into " + f.target.str() + ": " + (f.quasi_iso ? "quasi-iso" : "not quasi-iso");
    if (!f.witness.empty()) s += " (" + f.witness + ")";
    s += "\n";
  }
  return s;
}

BoundedComplex holim_module(const AdelicModule& x) { return cancel_unit_pivots(totalize(x)); }

std::optional<BoundedComplex> reduce_to_base(const BoundedComplex& c) {
  BoundedComplex r = cancel_unit_pivots(c);
  if (!r.empty())
    for (int n = r.lo(); n <= r.hi(); ++n)
      for (const auto& g : r.gens(n))
        if (g.carrier.kind() != ExprKind::Base) return std::nullopt;
  return r;
}

std::string vertex_summary(const AdelicModule& x, int v, const TestOptions& opt) {
  return summary_with(x, v, module_test_primes(x), opt);
}

std::string module_tuple(const AdelicModule& x, const TestOptions& opt) {
  const std::vector<AlgPrime> primes = module_test_primes(x);
  std::string s = "(";
  for (size_t k = 0; k < x.rings.display.size(); ++k) s += (k ? "; " : "") + summary_with(x, x.rings.display[k], primes, opt);
  return s + ")";
}

// ---------------------------------------------------------------- round trips

RoundtripReport roundtrip_check(const BoundedComplex& m, const SpectrumPoset& poset, const TestOptions& opt) {
  RoundtripReport rep;
  VerificationReport vr = verify_pullback(build_adelic_cube(m, poset), opt, "roundtrip");
  rep.verdict = vr.verdict;
  rep.pass = vr.verdict == Verdict::Pullback;
  rep.tests = vr.tests;
  rep.witness = vr.witness;
  rep.original = describe_homology(homology(m, opt.degree_cap));
  return rep;
}

RoundtripReport roundtrip_module(const AdelicModule& x, const TestOptions& opt) {
  RoundtripReport rep;
  auto base = reduce_to_base(holim_module(x));
  if (!base) fail(ErrorKind::NotRepresentable, "holim does not reduce to a complex over " + x.rings.base.key());
  AdelicModule y = tensor_up(*base, x.rings);
  rep.original = module_tuple(x, opt);
  rep.image = module_tuple(y, opt);
  rep.pass = rep.original == rep.image;
  rep.verdict = rep.pass ? Verdict::Pullback : Verdict::NotPullback;
  if (!rep.pass) rep.witness = rep.image;
  return rep;
}

std::string RoundtripReport::str() const {
  std::string s = std::string(pass ? "pass" : "fail") + " (" + verdict_name(verdict) + ")\n";
  if (!original.empty()) s += "  module " + original + "\n";
  if (!image.empty()) s += "  tensor_up(holim) " + image + "\n";
  for (const auto& t : tests) s += "  " + t.summary() + "\n";
  if (!witness.empty()) s += "witness " + witness + "\n";
  return s;
}

// ---------------------------------------------------------------- f_d

namespace {

FdStage fd_stage(const AdelicModule& x, int d, const TestOptions& opt) {
  const RingCube& rc = x.rings;
  if (d < 0 || d > rc.r) fail(ErrorKind::InvalidScenario, "dimension " + std::to_string(d) + " outside 0.." + std::to_string(rc.r));
  const unsigned cp = rc.base.charp;
  FdStage st;
  st.d = d;
  st.fd.rings = rc;
  const int nv = rc.size();
  // Vertex of f_d(X(d)) at 𝐝: X({d} ∪ 𝐝) when d ≥ d_0, else 0.
  std::vector<int> src(nv, -1);
  for (int v = 0; v < nv; ++v) {
    const Flag& f = rc.flags[v];
    if (f.dims[0] > d) continue;
    if (f.dims[0] == d) {
      src[v] = v;
      continue;
    }
    Flag g = f;
    g.dims.insert(g.dims.begin(), d);
    src[v] = rc.index(g);
  }
  for (int v = 0; v < nv; ++v) {
    st.fd.modules.push_back(src[v] < 0 ? BoundedComplex(rc.base) : x.modules[src[v]]);
    if (src[v] < 0)
      st.eta.push_back(zero_map(x.modules[v], st.fd.modules[v]));
    else if (src[v] == v)
      st.eta.push_back(identity_map(x.modules[v]));
    else
      st.eta.push_back(x.faces[src[v]][0]);
  }
  for (int v = 0; v < nv; ++v) {
    std::vector<ComplexMap> fs;
    const Flag& f = rc.flags[v];
    if (f.size() >= 2)
      for (int i = 0; i < f.size(); ++i) {
        const int w = rc.index(f.without(i));
        const BoundedComplex& a = st.fd.modules[w];
        const BoundedComplex& b = st.fd.modules[v];
        if (src[v] < 0)
          fs.push_back(zero_map(a, b));
        else if (src[w] == src[v])
          fs.push_back(identity_map(b));
        else
          fs.push_back(x.faces[src[v]][src[v] == v ? i : i + 1]);
      }
    st.fd.faces.push_back(fs);
  }

  // Naturality of η, then the cone module.
  const int lo = range_lo(x.modules) - 1, hi = range_hi(x.modules) + 1;
  st.cone.rings = rc;
  for (int v = 0; v < nv; ++v) st.cone.modules.push_back(cone(st.eta[v]));
  for (int v = 0; v < nv; ++v) {
    std::vector<ComplexMap> fs;
    const Flag& f = rc.flags[v];
    if (f.size() >= 2)
      for (int i = 0; i < f.size(); ++i) {
        const int w = rc.index(f.without(i));
        for (int n = lo; n <= hi; ++n)
          if (!(matmul(st.fd.faces[v][i].component(n), st.eta[w].component(n)) ==
                matmul(st.eta[v].component(n), x.faces[v][i].component(n))))
            fail(ErrorKind::NonCommuting, "η is not natural on face " + std::to_string(i) + " into " + f.str());
        ComplexMap cm{st.cone.modules[w], st.cone.modules[v], {}};
        for (int n = lo; n <= hi; ++n) {
          Matrix fa = x.faces[v][i].component(n + 1), fb = st.fd.faces[v][i].component(n);
          Matrix out(st.cone.modules[v].rank(n), st.cone.modules[w].rank(n), cp);
          for (int r = 0; r < fa.rows; ++r)
            for (int c = 0; c < fa.cols; ++c) out.at(r, c) = fa.at(r, c);
          for (int r = 0; r < fb.rows; ++r)
            for (int c = 0; c < fb.cols; ++c) out.at(fa.rows + r, fa.cols + c) = fb.at(r, c);
          cm.components[n] = out;
        }
        fs.push_back(cm);
      }
    st.cone.faces.push_back(fs);
  }

  std::vector<AlgPrime> primes = module_test_primes(x);
  const int dv = rc.index(Flag{{d}});
  st.eta_d_qiso = true;
  for (const auto& t : reduction_tests(cone(st.eta[dv]), primes, opt)) st.eta_d_qiso = st.eta_d_qiso && t.acyclic();

  std::vector<AlgPrime> support_primes = primes;
  support_primes.push_back(AlgPrime::zero(rc.base));
  bool undecided = false;
  for (int v = 0; v < nv; ++v) {
    const BoundedComplex& c = st.cone.modules[v];
    if (c.total_rank() == 0) continue;
    for (const auto& p : support_primes) {
      TestReport t = support_test(c, p, opt);
      if (t.acyclic()) continue;
      undecided = undecided || t.status == TestStatus::Relative;
      st.cone_support.push_back(rc.names[v] + ": " + p.key() + (t.status == TestStatus::Relative ? " (undecided)" : ""));
      st.cone_dim = std::max(st.cone_dim, rc.dim_of(p));
    }
  }
  st.certified = st.eta_d_qiso && st.cone_dim < d && !undecided;
  return st;
}

}  // namespace

FdStage f_d_reconstruct(const AdelicModule& x, int d, const TestOptions& opt) {
  CocartesianStatus cs = is_cocartesian(x, opt);
  if (!cs.cocartesian) {
    std::string w;
    for (const auto& f : cs.faces)
      if (!f.quasi_iso) {
        w = "face " + std::to_string(f.face) + " into " + f.target.str() + ": " + f.witness;
        break;
      }
    fail(ErrorKind::NotCocartesian, w);
  }
  return fd_stage(x, d, opt);
}

std::string FdStage::str() const {
  std::string s = "f_" + std::to_string(d) + ": η(" + std::to_string(d) + ") " + (eta_d_qiso ? "quasi-iso" : "not quasi-iso") +
                  "; cone support dim " + std::to_string(cone_dim) + (certified ? " (certified)" : " (not certified)") + "\n";
  for (const auto& c : cone_support) s += "  supp " + c + "\n";
  return s;
}

Reconstruction reconstruct(const AdelicModule& x, const TestOptions& opt) {
  Reconstruction rec;
  rec.ok = true;
  AdelicModule y = x;
  for (int d = x.rings.r; d >= 0; --d) {
    FdStage st = d == x.rings.r ? f_d_reconstruct(y, d, opt) : fd_stage(y, d, opt);
    rec.ok = rec.ok && st.certified;
    y = st.cone;
    rec.stages.push_back(std::move(st));
  }
  return rec;
}

std::string Reconstruction::str() const {
  std::string s = ok ? "reconstructed\n" : "reconstruction not certified\n";
  for (const auto& st : stages) s += st.str();
  return s;
}

}  // namespace adelic
