#include "adelic/cube.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace adelic {

const char* cube_variant_name(CubeVariant v) {
  return v == CubeVariant::Adelic ? "adelic" : "beilinson-parshin";
}

std::string CubeBlock::key() const {
  if (assignment.empty()) return "()";
  std::string s;
  for (size_t i = 0; i < assignment.size(); ++i) s += (i ? "/" : "") + (assignment[i] ? assignment[i]->key() : std::string("*"));
  return s;
}

int CubeVertex::block_index(const std::vector<std::optional<AlgPrime>>& a) const {
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    if (blocks[b].assignment == a) return b;
  return -1;
}

int CubeVertex::rank(int n) const {
  int s = 0;
  for (const auto& b : blocks) s += b.complex.rank(n);
  return s;
}

BoundedComplex CubeVertex::complex() const {
  if (blocks.empty()) return {};
  BoundedComplex out(blocks[0].complex.ring());
  int lo = 0, hi = -1;
  for (const auto& b : blocks)
    if (!b.complex.empty()) {
      if (hi < lo) lo = b.complex.lo(), hi = b.complex.hi();
      lo = std::min(lo, b.complex.lo());
      hi = std::max(hi, b.complex.hi());
    }
  for (int n = lo; n <= hi; ++n)
    for (const auto& b : blocks)
      for (const auto& g : b.complex.gens(n)) out.add_gen(n, {g.carrier, b.key() + ":" + g.label});
  for (int n = lo; n < hi; ++n) {
    Matrix d(out.rank(n + 1), out.rank(n), out.ring().charp);
    int r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
      Matrix bd = b.complex.diff(n);
      for (int i = 0; i < bd.rows; ++i)
        for (int j = 0; j < bd.cols; ++j) d.at(r0 + i, c0 + j) = bd.at(i, j);
      r0 += bd.rows;
      c0 += bd.cols;
    }
    out.set_diff(n, d);
  }
  return out;
}

// ---------------------------------------------------------------- diagram access

const CubeVertex& CubeDiagram::at(const Flag& f) const {
  for (const auto& v : vertices)
    if (v.flag == f) return v;
  fail(ErrorKind::InvalidScenario, "no cube vertex " + f.str());
}

CubeVertex& CubeDiagram::at(const Flag& f) {
  return const_cast<CubeVertex&>(static_cast<const CubeDiagram*>(this)->at(f));
}

int CubeDiagram::lo() const {
  int lo = 0;
  bool any = false;
  for (const auto& v : vertices)
    for (const auto& b : v.blocks)
      if (!b.complex.empty()) lo = any ? std::min(lo, b.complex.lo()) : b.complex.lo(), any = true;
  return lo;
}

int CubeDiagram::hi() const {
  int hi = 0;
  bool any = false;
  for (const auto& v : vertices)
    for (const auto& b : v.blocks)
      if (!b.complex.empty()) hi = any ? std::max(hi, b.complex.hi()) : b.complex.hi(), any = true;
  return hi;
}

int CubeDiagram::source_block(const Flag& f, int i, int b) const {
  auto a = at(f).blocks.at(b).assignment;
  a.erase(a.begin() + i);
  int s = at(f.without(i)).block_index(a);
  if (s < 0) fail(ErrorKind::InvalidComplex, "face " + std::to_string(i) + " of " + f.str() + " has no source for block " + at(f).blocks[b].key());
  return s;
}

namespace {

Matrix block_component(const CubeBlock& src, const CubeBlock& tgt, int n, unsigned cp) {
  const int rows = tgt.complex.rank(n), cols = src.complex.rank(n);
  Matrix m(rows, cols, cp);
  if (!src.quotient && tgt.quotient) {
    // m -> e_0 ⊗ m: the degree-0 Koszul summand comes after K^{-1} ⊗ M^{n+1}.
    const int off = rows - cols;
    for (int j = 0; j < cols; ++j) m.at(off + j, j) = Poly(Rat(1), cp);
    return m;
  }
  if (src.quotient && !tgt.quotient) fail(ErrorKind::InvalidComplex, "no face map out of a quotient block");
  for (int j = 0; j < std::min(rows, cols); ++j) m.at(j, j) = Poly(Rat(1), cp);
  return m;
}

}  // namespace

Matrix CubeDiagram::face_matrix(const Flag& f, int i, int n) const {
  const CubeVertex& tgt = at(f);
  const CubeVertex& src = at(f.without(i));
  const unsigned cp = poset.ring().charp;
  Matrix out(tgt.rank(n), src.rank(n), cp);
  std::vector<int> src_off(src.blocks.size() + 1, 0);
  for (size_t b = 0; b < src.blocks.size(); ++b) src_off[b + 1] = src_off[b] + src.blocks[b].complex.rank(n);
  int r0 = 0;
  for (int b = 0; b < static_cast<int>(tgt.blocks.size()); ++b) {
    const int sb = source_block(f, i, b);
    Matrix c = block_component(src.blocks[sb], tgt.blocks[b], n, cp);
    const bool flip = sign_flips.count({f.str(), i, b}) > 0;
    for (int r = 0; r < c.rows; ++r)
      for (int k = 0; k < c.cols; ++k)
        if (!c.at(r, k).is_zero()) out.at(r0 + r, src_off[sb] + k) = flip ? -c.at(r, k) : c.at(r, k);
    r0 += c.rows;
  }
  return out;
}

ComplexMap CubeDiagram::face(const Flag& f, int i) const {
  ComplexMap m{at(f.without(i)).complex(), at(f).complex(), {}};
  for (int n = lo(); n <= hi(); ++n) m.components[n] = face_matrix(f, i, n);
  return m;
}

// ---------------------------------------------------------------- construction

namespace {

struct Builder {
  const SpectrumPoset& poset;
  const BaseRing& ring;
  CubeVariant variant;
  std::optional<AlgPrime> quotient_at;  // skip the completion of blocks ending at this prime

  // Infinitely many primes of dimension d contain `above`.
  bool infinite_level(int d, const std::optional<AlgPrime>& above) const {
    if (ring.finite_spectrum() || d == ring.krull_dim()) return false;
    if (above && poset.dim(*above) <= d) return false;
    return true;
  }

  std::vector<AlgPrime> declared_at(int d, const std::optional<AlgPrime>& above) const {
    std::vector<AlgPrime> out;
    for (const auto& p : poset.of_dim(d))
      if (!above || p.contains(*above)) out.push_back(p);
    return out;
  }

  RingExpr wrap(const PrimeRef& at, const RingExpr& inner, bool complete) const {
    if (variant == CubeVariant::Adelic) {
      RingExpr x = complete ? RingExpr::complete(inner, at) : inner;
      return RingExpr::localize(x, at);
    }
    return RingExpr::complete(RingExpr::localize(inner, at), at);
  }

  // Factor at level i with prime `at`, deeper levels all undeclared (inside a family template).
  RingExpr family_level(const Flag& f, int i, const PrimeRef& at) const {
    const int s = f.size() - 1;
    if (i == s) return wrap(at, RingExpr::base(ring), true);
    PrimeFamily fam{f.dims[i + 1], PrimeRef::var(0), {}};
    RingExpr inner = RingExpr::family(family_level(f, i + 1, PrimeRef::var(0)), fam);
    return wrap(at, inner, false);
  }

  RingExpr carrier(const Flag& f, const std::vector<std::optional<AlgPrime>>& a, int i) const {
    const int s = f.size() - 1;
    if (a[i]) {
      const AlgPrime& p = *a[i];
      if (i == s) {
        const bool complete = !(quotient_at && *quotient_at == p);
        if (!complete) return RingExpr::localize(RingExpr::base(ring), PrimeRef::of(p));
        return wrap(PrimeRef::of(p), RingExpr::base(ring), true);
      }
      return wrap(PrimeRef::of(p), carrier(f, a, i + 1), false);
    }
    std::optional<AlgPrime> above = i > 0 ? a[i - 1] : std::nullopt;
    PrimeFamily fam{f.dims[i], above ? std::optional<PrimeRef>(PrimeRef::of(*above)) : std::nullopt, declared_at(f.dims[i], above)};
    return RingExpr::family(family_level(f, i, PrimeRef::var(0)), fam);
  }

  std::vector<std::vector<std::optional<AlgPrime>>> assignments(const Flag& f) const {
    std::vector<std::vector<std::optional<AlgPrime>>> out;
    std::vector<std::optional<AlgPrime>> cur;
    std::function<void(int)> rec = [&](int i) {
      if (i == f.size()) {
        out.push_back(cur);
        return;
      }
      if (i > 0 && !cur.back()) {
        cur.push_back(std::nullopt);
        rec(i + 1);
        cur.pop_back();
        return;
      }
      std::optional<AlgPrime> above = i > 0 ? cur.back() : std::nullopt;
      for (const auto& q : declared_at(f.dims[i], above)) {
        cur.push_back(q);
        rec(i + 1);
        cur.pop_back();
      }
      if (infinite_level(f.dims[i], above)) {
        cur.push_back(std::nullopt);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }
};

std::vector<std::string> omitted_parts(const SpectrumPoset& poset) {
  const BaseRing& ring = poset.ring();
  std::vector<std::string> out;
  if (ring.finite_spectrum()) {
    std::vector<AlgPrime> missing;
    const SpectrumPoset all = SpectrumPoset::full(ring);
    for (const auto& p : all.primes())
      if (!poset.contains(p)) missing.push_back(p);
    if (!missing.empty()) out.push_back("undeclared primes " + primes_str(missing));
    return out;
  }
  for (int d = poset.r() + 1; d <= ring.krull_dim(); ++d)
    out.push_back(d == ring.krull_dim() ? "the generic point (0)" : "primes of dimension " + std::to_string(d));
  return out;
}

CubeDiagram build(const BoundedComplex& m, const SpectrumPoset& poset, CubeVariant variant,
                  std::optional<AlgPrime> quotient_at) {
  if (!(m.ring() == poset.ring())) fail(ErrorKind::InvalidScenario, "module and poset over different rings");
  if (!m.empty())
    for (int n = m.lo(); n <= m.hi(); ++n)
      for (const auto& g : m.gens(n))
        if (g.carrier.kind() != ExprKind::Base)
          fail(ErrorKind::NotRepresentable, "cube entries need a free complex over the base, found carrier " + g.carrier.key());
  CubeDiagram cube;
  cube.poset = poset;
  cube.m = m;
  cube.variant = variant;
  cube.r = poset.r();
  cube.omitted = omitted_parts(poset);
  Builder b{poset, poset.ring(), variant, quotient_at};

  CubeVertex init;
  init.blocks.push_back({{}, RingExpr::base(poset.ring()), m, false});
  cube.vertices.push_back(init);
  for (const auto& f : all_flags(cube.r)) {
    CubeVertex v;
    v.flag = f;
    for (const auto& a : b.assignments(f)) {
      CubeBlock blk;
      blk.assignment = a;
      blk.carrier = rewrite(b.carrier(f, a, 0));
      if (blk.carrier.is_zero()) continue;
      blk.quotient = quotient_at && a.back() && *a.back() == *quotient_at;
      BoundedComplex src = blk.quotient ? tensor(koszul_complex(poset.ring(), quotient_at->generators()), m) : m;
      blk.complex = retag(src, [&](const RingExpr&) { return blk.carrier; });
      v.blocks.push_back(std::move(blk));
    }
    cube.vertices.push_back(std::move(v));
  }
  return cube;
}

}  // namespace

CubeDiagram build_cube(const BoundedComplex& m, const SpectrumPoset& poset, CubeVariant variant) {
  return build(m, poset, variant, std::nullopt);
}

CubeDiagram build_adelic_cube(const BoundedComplex& m, const SpectrumPoset& poset) {
  return build_cube(m, poset, CubeVariant::Adelic);
}

CubeDiagram build_bp_cube(const BoundedComplex& m, const SpectrumPoset& poset) {
  return build_cube(m, poset, CubeVariant::BeilinsonParshin);
}

void corrupt_sign(CubeDiagram& cube, const Flag& f, int i, int block) {
  if (i < 0 || i >= f.size() || block < 0 || block >= static_cast<int>(cube.at(f).blocks.size()))
    fail(ErrorKind::InvalidScenario, "no face " + std::to_string(i) + " / block " + std::to_string(block) + " at " + f.str());
  cube.sign_flips.insert({f.str(), i, block});
  cube.corruption = "sign flip on face " + std::to_string(i) + " into " + f.str() + " block " + cube.at(f).blocks[block].key();
}

CubeDiagram build_quotient_corrupted(const BoundedComplex& m, const SpectrumPoset& poset, const AlgPrime& p) {
  if (!poset.contains(p) || poset.dim(p) != 0) fail(ErrorKind::UnknownPrime, p.key() + " is not a declared closed point");
  CubeDiagram c = build(m, poset, CubeVariant::Adelic, p);
  c.corruption = "completion at " + p.key() + " replaced by K_" + p.key() + " ⊗ M";
  return c;
}

// ---------------------------------------------------------------- cochain law

LawReport check_cochain_law(const CubeDiagram& cube, bool throw_on_violation) {
  LawReport rep;
  const int lo = cube.lo(), hi = cube.hi();
  for (const auto& v : cube.vertices) {
    const Flag& f = v.flag;
    for (int a = 0; a < f.size(); ++a)
      for (int b = a + 1; b < f.size(); ++b) {
        LawCheck c{f, a, b, f.size() == 2, true, ""};
        const Flag fa = f.without(a), fb = f.without(b);
        for (int n = lo; n <= hi && c.ok; ++n) {
          Matrix lhs = matmul(cube.face_matrix(f, a, n), cube.face_matrix(fa, b - 1, n));
          Matrix rhs = matmul(cube.face_matrix(f, b, n), cube.face_matrix(fb, a, n));
          if (!(lhs == rhs)) {
            c.ok = false;
            c.witness = "degree " + std::to_string(n) + ": δ_" + std::to_string(a) + "δ_" + std::to_string(b - 1) + " = " +
                        lhs.str() + " but δ_" + std::to_string(b) + "δ_" + std::to_string(a) + " = " + rhs.str();
          }
        }
        if (!c.ok) {
          ++rep.violations;
          if (throw_on_violation)
            fail(ErrorKind::LawViolation, f.str() + " a=" + std::to_string(a) + " b=" + std::to_string(b) + ": " + c.witness);
        }
        rep.checks.push_back(c);
      }
  }
  return rep;
}

// ---------------------------------------------------------------- totalization

BoundedComplex total_complex(const CubeDiagram& cube, bool augmented) {
  BoundedComplex out(cube.poset.ring());
  const unsigned cp = cube.poset.ring().charp;
  const int lo = cube.lo(), hi = cube.hi();
  const int first = augmented ? 0 : 1;
  const int nv = static_cast<int>(cube.vertices.size());
  std::vector<BoundedComplex> vc(nv);
  for (int v = first; v < nv; ++v) vc[v] = cube.vertices[v].complex();
  auto size_of = [&](int v) { return cube.vertices[v].flag.size(); };
  // offset[v][N]: position of vertex v inside total degree N.
  const int tlo = lo - 1, thi = hi + cube.r;
  std::vector<std::map<int, int>> offset(nv);
  for (int N = tlo; N <= thi; ++N) {
    int k = 0;
    for (int v = first; v < nv; ++v) {
      const int n = N - size_of(v) + 1;
      offset[v][N] = k;
      for (const auto& g : vc[v].gens(n)) {
        out.add_gen(N, {g.carrier, cube.vertices[v].flag.str() + ":" + g.label});
        ++k;
      }
    }
  }
  if (out.empty()) return out;
  for (int N = tlo; N < thi; ++N) {
    Matrix d(out.rank(N + 1), out.rank(N), cp);
    for (int v = first; v < nv; ++v) {
      const int t = size_of(v);
      const int n = N - t + 1;
      Matrix dv = vc[v].diff(n);
      const bool neg = t % 2 == 1;
      for (int i = 0; i < dv.rows; ++i)
        for (int j = 0; j < dv.cols; ++j)
          if (!dv.at(i, j).is_zero()) d.at(offset[v][N + 1] + i, offset[v][N] + j) = neg ? -dv.at(i, j) : dv.at(i, j);
      if (t == 0) continue;
      const Flag& f = cube.vertices[v].flag;
      for (int pos = 0; pos < t; ++pos) {
        if (!augmented && t == 1) continue;
        const Flag src = f.without(pos);
        int w = 0;
        while (!(cube.vertices[w].flag == src)) ++w;
        Matrix fm = cube.face_matrix(f, pos, N - (t - 1) + 1);
        const bool fneg = pos % 2 == 1;
        for (int i = 0; i < fm.rows; ++i)
          for (int j = 0; j < fm.cols; ++j)
            if (!fm.at(i, j).is_zero()) d.at(offset[v][N + 1] + i, offset[w][N] + j) = fneg ? -fm.at(i, j) : fm.at(i, j);
      }
    }
    out.set_diff(N, d);
  }
  out.trim();
  return out;
}

std::vector<AlgPrime> cube_primes(const CubeDiagram& cube) {
  std::vector<AlgPrime> out;
  for (const auto& v : cube.vertices)
    for (const auto& b : v.blocks)
      for (const auto& a : b.assignment)
        if (a) out.push_back(*a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace adelic
