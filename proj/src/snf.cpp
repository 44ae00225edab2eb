#include "adelic/snf.hpp"

#include <algorithm>

namespace adelic {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- Core

Core Core::global(const BaseRing& r, std::vector<Poly> inverted) {
  Core c;
  c.base = r;
  c.kind = Kind::Global;
  c.inverted = std::move(inverted);
  return c;
}

Core Core::local(const BaseRing& r, std::vector<AlgPrime> at, bool completed) {
  Core c;
  c.base = r;
  c.kind = Kind::Local;
  std::sort(at.begin(), at.end());
  c.at = std::move(at);
  c.completed = completed;
  return c;
}

Core Core::fraction(const BaseRing& r) {
  Core c;
  c.base = r;
  c.kind = Kind::Fraction;
  return c;
}

std::string Core::name() const {
  const std::string field = base.charp ? "F_" + std::to_string(base.charp) : "Q";
  switch (kind) {
    case Kind::Fraction:
      if (base.kind == RingKind::Integers || base.is_field()) return base.is_field() ? base.key() : "Q";
      return "Frac(" + base.key() + ")";
    case Kind::Global: {
      std::string s = base.key();
      if (!inverted.empty()) {
        s += "[1/";
        for (size_t i = 0; i < inverted.size(); ++i) s += (i ? ",1/" : "") + inverted[i].str();
        s += "]";
      }
      return s;
    }
    case Kind::Local: {
      std::string s = base.kind == RingKind::Integers ? "Z" : base.key();
      s += "_(";
      for (size_t i = 0; i < at.size(); ++i) {
        std::string k = at[i].key();
        s += (i ? "," : "") + k.substr(1, k.size() - 2);
      }
      s += ")";
      if (completed) s += "^∧";
      return s;
    }
  }
  return "?";
}

PrimeSet nonunit_primes(const Core& core) {
  PrimeSet ps;
  if (core.is_field()) return ps;
  const BaseRing& r = core.base;
  auto divides_inverted = [&](const Poly& p) {
    for (const auto& f : core.inverted) {
      if (r.kind == RingKind::Integers) {
        if (f.is_zero()) continue;
        if (mp::numerator(f.constant_term()) % mp::numerator(p.constant_term()) == 0) return true;
      } else if (udivmod(f, p).second.is_zero()) {
        return true;
      }
    }
    return false;
  };
  if (core.kind == Core::Kind::Local) {
    for (const auto& p : core.at) {
      if (p.is_zero()) continue;
      ps.primes.push_back(p.basis()[0]);
    }
    return ps;
  }
  if (r.is_semilocal()) {
    for (const auto& p : r.local_primes) {
      Poly pp{Rat(p)};
      if (!divides_inverted(pp)) ps.primes.push_back(pp);
    }
    return ps;
  }
  ps.cofinite = true;
  ps.primes = core.inverted;
  return ps;
}

Poly strip_to_core(const Poly& d, const Core& core) {
  const unsigned cp = core.base.charp;
  if (d.is_zero()) return d;
  if (core.is_field() || core.base.is_field()) return Poly(Rat(1), cp);
  PrimeSet ps = nonunit_primes(core);
  if (core.base.kind == RingKind::Integers) {
    Int n = abs_int(mp::numerator(d.constant_term()));
    if (!ps.cofinite) {
      Int out = 1;
      for (const auto& p : ps.primes) {
        Int q = mp::numerator(p.constant_term());
        while (n % q == 0) {
          n /= q;
          out *= q;
        }
      }
      return Poly(Rat(out));
    }
    for (const auto& f : ps.primes) {
      Int fi = abs_int(mp::numerator(f.constant_term()));
      for (Int g = gcd(n, fi); g > 1; g = gcd(n, fi)) n /= g;
    }
    return Poly(Rat(n));
  }
  if (core.base.kind == RingKind::UnivariatePoly) {
    Poly m = d.monic();
    if (!ps.cofinite) {
      Poly out(Rat(1), cp);
      for (const auto& p : ps.primes) {
        for (;;) {
          auto [q, r] = udivmod(m, p);
          if (!r.is_zero()) break;
          m = q;
          out *= p;
        }
      }
      return out.monic();
    }
    for (const auto& f : ps.primes) {
      for (Poly g = ugcd(m, f); !g.is_constant(); g = ugcd(m, f)) m = udivmod(m, g).first;
    }
    return m.monic();
  }
  fail(ErrorKind::UnsupportedRing, "no invariant factors over " + core.name());
}

bool is_core_unit(const Poly& d, const Core& core) {
  if (d.is_zero()) return false;
  return strip_to_core(d, core).is_one();
}

// ---------------------------------------------------------------- Euclidean SNF

namespace {

enum class Dom { Integer, Field, Univariate };

struct Euclid {
  Dom dom;
  unsigned charp;

  Int norm(const Poly& a) const {
    switch (dom) {
      case Dom::Integer: return abs_int(mp::numerator(a.constant_term()));
      case Dom::Field: return 0;
      case Dom::Univariate: return a.total_degree();
    }
    return 0;
  }

  Poly inverse_constant(const Poly& a) const {
    Rat c = a.constant_term();
    if (c == 0) fail(ErrorKind::InvalidExpr, "division by zero");
    return Poly(Rat(1) / c, charp);
  }

  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
    switch (dom) {
      case Dom::Integer: {
        Int na = mp::numerator(a.constant_term()), nb = mp::numerator(b.constant_term());
        Int q = na / nb;
        return {Poly(Rat(q)), Poly(Rat(na - q * nb))};
      }
      case Dom::Field: return {a * inverse_constant(b), Poly(charp)};
      case Dom::Univariate: return udivmod(a, b);
    }
    return {};
  }

  // Unit u such that u*a is normalized.
  Poly normal_unit(const Poly& a) const {
    switch (dom) {
      case Dom::Integer: return Poly(Rat(mp::numerator(a.constant_term()) < 0 ? -1 : 1));
      case Dom::Field: return inverse_constant(a);
      case Dom::Univariate: return Poly(charp ? Rat(rat_mod_inverse(mp::numerator(a.lead_coeff()), charp))
                                               : Rat(1) / a.lead_coeff(),
                                        charp);
    }
    return {};
  }
};

Euclid domain_of(const Core& core) {
  const BaseRing& b = core.base;
  if (b.kind == RingKind::BivariatePoly)
    fail(ErrorKind::UnsupportedRing, "Smith normal form over " + core.name() + " (use Groebner homology)");
  if (b.is_field()) return {Dom::Field, b.charp};
  if (core.kind == Core::Kind::Fraction) {
    if (b.kind == RingKind::Integers) return {Dom::Field, 0};
    fail(ErrorKind::UnsupportedRing, "Smith normal form over " + core.name() + " (ranks only)");
  }
  if (b.kind == RingKind::Integers) return {Dom::Integer, 0};
  return {Dom::Univariate, b.charp};
}

void row_op(Matrix& m, int target, int source, const Poly& q) {  // row_target -= q row_source
  for (int j = 0; j < m.cols; ++j)
    if (!m.at(source, j).is_zero()) m.at(target, j) -= q * m.at(source, j);
}

void col_op(Matrix& m, int target, int source, const Poly& q) {  // col_target -= q col_source
  for (int i = 0; i < m.rows; ++i)
    if (!m.at(i, source).is_zero()) m.at(i, target) -= q * m.at(i, source);
}

void swap_rows(Matrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(Matrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

void scale_row(Matrix& m, int i, const Poly& u) {
  for (int j = 0; j < m.cols; ++j) m.at(i, j) = m.at(i, j) * u;
}

// Clear denominators row by row with core units (Integer domain only).
Matrix clear_rows(const Matrix& m, const Core& core, Matrix& left) {
  Matrix out = m;
  for (int i = 0; i < m.rows; ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols; ++j) {
      const Poly& x = m.at(i, j);
      if (!x.is_constant() && !x.is_zero()) fail(ErrorKind::InvalidComplex, "entry " + x.str() + " is not an integer");
      Int den = mp::denominator(x.constant_term());
      l = l / gcd(l, den) * den;
    }
    if (l == 1) continue;
    if (!is_core_unit(Poly(Rat(l)), core))
      fail(ErrorKind::InvalidComplex, "denominator " + l.str() + " is not a unit in " + core.name());
    scale_row(out, i, Poly(Rat(l)));
    scale_row(left, i, Poly(Rat(l)));
  }
  return out;
}

}  // namespace

SNF smith_normal_form(const Matrix& input, const Core& core) {
  const Euclid eu = domain_of(core);
  const unsigned cp = core.base.charp;
  SNF s;
  s.left = Matrix::identity(input.rows, cp);
  s.right = Matrix::identity(input.cols, cp);
  Matrix m = eu.dom == Dom::Integer ? clear_rows(input, core, s.left) : input;
  if (eu.dom == Dom::Univariate)
    for (const auto& x : m.e)
      if (x.uses_y()) fail(ErrorKind::InvalidComplex, "entry " + x.str() + " is not univariate");

  const int n = std::min(m.rows, m.cols);
  int t = 0;
  for (; t < n; ++t) {
    // Pivot of least norm in the trailing block.
    int pi = -1, pj = -1;
    Int best = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (m.at(i, j).is_zero()) continue;
        Int nv = eu.norm(m.at(i, j));
        if (best < 0 || nv < best) {
          best = nv;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(m, t, pi);
    swap_rows(s.left, t, pi);
    swap_cols(m, t, pj);
    swap_cols(s.right, t, pj);

    for (bool done = false; !done;) {
      done = true;
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t).is_zero()) continue;
        auto [q, r] = eu.divmod(m.at(i, t), m.at(t, t));
        row_op(m, i, t, q);
        row_op(s.left, i, t, q);
        if (!r.is_zero()) {
          swap_rows(m, i, t);
          swap_rows(s.left, i, t);
          done = false;
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j).is_zero()) continue;
        auto [q, r] = eu.divmod(m.at(t, j), m.at(t, t));
        col_op(m, j, t, q);
        col_op(s.right, j, t, q);
        if (!r.is_zero()) {
          swap_cols(m, j, t);
          swap_cols(s.right, j, t);
          done = false;
        }
      }
      if (!done) continue;
      // Divisibility of the trailing block by the pivot.
      for (int i = t + 1; i < m.rows && done; ++i)
        for (int j = t + 1; j < m.cols; ++j) {
          if (m.at(i, j).is_zero()) continue;
          if (!eu.divmod(m.at(i, j), m.at(t, t)).second.is_zero()) {
            row_op(m, t, i, Poly(Rat(-1), cp));
            row_op(s.left, t, i, Poly(Rat(-1), cp));
            done = false;
            break;
          }
        }
    }
    Poly u = eu.normal_unit(m.at(t, t));
    scale_row(m, t, u);
    scale_row(s.left, t, u);
  }
  s.rank = t;

  // Express each factor through the non-units of the core.
  for (int i = 0; i < s.rank; ++i) {
    Poly d = m.at(i, i);
    Poly st = strip_to_core(d, core);
    if (eu.dom == Dom::Integer && !(st == d)) {
      Poly inv(Rat(st.constant_term() / d.constant_term()));
      scale_row(m, i, inv);
      scale_row(s.left, i, inv);
    }
    s.factors.push_back(st);
  }
  s.diag = m;
  return s;
}

namespace {

// Fraction-free elimination with full pivoting: the rank and the last pivot, which is a nonzero
// maximal minor of m up to sign.
std::pair<int, Int> bareiss(std::vector<std::vector<Int>> a) {
  const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
  Int prev = 1;
  int k = 0;
  for (; k < std::min(rows, cols); ++k) {
    int pi = -1, pj = -1;
    for (int i = k; i < rows && pi < 0; ++i)
      for (int j = k; j < cols; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(a[k], a[pi]);
    for (auto& row : a) std::swap(row[k], row[pj]);
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return {k, abs_int(prev)};
}

Int mod_pos(const Int& a, const Int& d) {
  Int r = a % d;
  return r < 0 ? Int(r + d) : r;
}

}  // namespace

SNF invariant_factors(const Matrix& input, const Core& core) {
  const Euclid eu = domain_of(core);
  if (eu.dom != Dom::Integer) {
    SNF s = smith_normal_form(input, core);
    return {Matrix(), Matrix(), Matrix(), s.factors, s.rank};
  }
  Matrix scratch = Matrix::identity(input.rows);
  const Matrix cleared = clear_rows(input, core, scratch);
  std::vector<std::vector<Int>> a(cleared.rows, std::vector<Int>(cleared.cols));
  for (int i = 0; i < cleared.rows; ++i)
    for (int j = 0; j < cleared.cols; ++j) a[i][j] = mp::numerator(cleared.at(i, j).constant_term());
  const auto [rank, d] = bareiss(a);
  SNF s;
  s.rank = rank;
  if (rank == 0) return s;

  // Invariant factors s_k divide d, so gcd(s_k, d) = s_k and Z/(d) loses nothing.
  for (auto& row : a)
    for (auto& x : row) x = mod_pos(x, d);
  const int rows = cleared.rows, cols = cleared.cols;
  std::vector<Int> diag;
  for (int t = 0; t < std::min(rows, cols); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || a[i][j] < a[pi][pj])) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    for (bool done = false; !done;) {
      done = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) a[i][j] = mod_pos(a[i][j] - q * a[t][j], d);
        if (a[i][t] != 0) {
          std::swap(a[i], a[t]);
          done = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) a[i][j] = mod_pos(a[i][j] - q * a[i][t], d);
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[j], row[t]);
          done = false;
        }
      }
      if (!done) continue;
      for (int i = t + 1; i < rows && done; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (int k = t; k < cols; ++k) a[t][k] = mod_pos(a[t][k] + a[i][k], d);
            done = false;
            break;
          }
    }
    diag.push_back(gcd(a[t][t], d));
  }
  // Factors equal to d vanish modulo d.
  while (static_cast<int>(diag.size()) < rank) diag.push_back(d);
  diag.resize(rank);
  for (const auto& f : diag) s.factors.push_back(strip_to_core(Poly(Rat(f)), core));
  return s;
}

int matrix_rank(const Matrix& m, const Core& core) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (core.base.kind == RingKind::BivariatePoly || core.base.kind == RingKind::UnivariatePoly)
    return fraction_field_rank(m.to_rows(), m.cols);
  if (core.base.kind == RingKind::Integers) {
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
    for (int i = 0; i < m.rows; ++i) {
      Int l = 1;
      for (int j = 0; j < m.cols; ++j) {
        const Int den = mp::denominator(m.at(i, j).constant_term());
        l = l / gcd(l, den) * den;
      }
      for (int j = 0; j < m.cols; ++j) a[i][j] = mp::numerator(m.at(i, j).constant_term() * Rat(l));
    }
    return bareiss(a).first;
  }
  Core f = Core::fraction(core.base);
  return smith_normal_form(m, f).rank;
}

// ---------------------------------------------------------------- homology

std::string HomologyGroup::str() const {
  if (zero) return "0";
  std::string s;
  auto add = [&](const std::string& part) { s += (s.empty() ? "" : " ⊕ ") + part; };
  if (free_rank == 1) add(core);
  if (free_rank > 1) add(core + "^" + std::to_string(free_rank));
  for (const auto& t : torsion) add(core + "/(" + t.str() + ")");
  if (s.empty()) {
    s = "nonzero";
    if (!hilbert.empty()) {
      s += " [hilbert";
      for (auto h : hilbert) s += " " + std::to_string(h);
      s += "]";
    }
  }
  return s;
}

bool HomologyGroup::operator==(const HomologyGroup& o) const {
  return degree == o.degree && zero == o.zero && free_rank == o.free_rank && torsion == o.torsion &&
         hilbert == o.hilbert && completed == o.completed && core == o.core;
}

bool ModuleInvariants::operator==(const ModuleInvariants& o) const {
  return free_rank == o.free_rank && torsion == o.torsion;
}

HomologyGroup homology_invariants(const Matrix& d_in, const Matrix& d_out, const Core& core, int degree,
                                  int degree_cap) {
  const int mid = d_in.rows;
  if (d_out.cols != mid) fail(ErrorKind::InvalidComplex, "homology: middle ranks disagree");
  if (!matmul(d_out, d_in).is_zero())
    fail(ErrorKind::CompositionNonzero, "d_out * d_in != 0 at degree " + std::to_string(degree));
  HomologyGroup h;
  h.degree = degree;
  h.core = core.name();
  h.completed = core.completed;
  if (mid == 0) return h;

  if (core.base.kind == RingKind::BivariatePoly && core.kind != Core::Kind::Fraction) {
    PolyHomology ph = groebner_homology(d_in.to_rows(), d_in.cols, d_out.to_rows(), mid, 8, degree_cap);
    bool zero = ph.is_zero;
    if (!zero && core.kind == Core::Kind::Local) {
      zero = true;
      for (const auto& p : core.at)
        if (!homology_vanishes_locally(ph, mid, p.basis(), degree_cap)) zero = false;
    }
    h.zero = zero;
    if (!zero) {
      h.free_rank = mid - matrix_rank(d_out, core) - matrix_rank(d_in, core);
      if (core.kind == Core::Kind::Global && ph.homogeneous) h.hilbert = ph.hilbert;
    }
    return h;
  }

  const int rank_out = matrix_rank(d_out, core);
  if (core.is_field()) {
    h.free_rank = mid - rank_out - matrix_rank(d_in, core);
  } else {
    SNF s = invariant_factors(d_in, core);
    h.free_rank = mid - rank_out - s.rank;
    for (const auto& f : s.factors)
      if (!f.is_one()) h.torsion.push_back(f);
  }
  h.zero = h.free_rank == 0 && h.torsion.empty();
  return h;
}

// ---------------------------------------------------------------- subquotients

ModuleInvariants subquotient_invariants(const Matrix& l, const Matrix& b, const Core& core) {
  if (l.rows != b.rows) fail(ErrorKind::InvalidComplex, "subquotient: ambient ranks differ");
  const unsigned cp = core.base.charp;

  // Clear column denominators by core units so spans over the global ring localize correctly.
  auto clear_cols = [&](const Matrix& m) {
    Matrix out = m;
    if (core.base.kind != RingKind::Integers || core.is_field()) return out;
    for (int j = 0; j < m.cols; ++j) {
      Int den = 1;
      for (int i = 0; i < m.rows; ++i) {
        Int d = mp::denominator(m.at(i, j).constant_term());
        den = den / gcd(den, d) * d;
      }
      for (int i = 0; i < m.rows; ++i) out.at(i, j) = out.at(i, j) * Poly(Rat(den));
    }
    return out;
  };
  Matrix bc = clear_cols(b);
  Matrix lc = clear_cols(l);
  Matrix all(l.rows, lc.cols + bc.cols, cp);
  for (int i = 0; i < l.rows; ++i) {
    for (int j = 0; j < lc.cols; ++j) all.at(i, j) = lc.at(i, j);
    for (int j = 0; j < bc.cols; ++j) all.at(i, lc.cols + j) = bc.at(i, j);
  }
  // Spans are computed over the global Euclidean ring; Z_S is handled over Z itself.
  Core euclid = core.is_field() ? core : Core::global(core.base.is_semilocal() ? BaseRing::integers() : core.base);
  SNF s = smith_normal_form(all, euclid);
  Matrix ub = matmul(s.left, bc);
  const Euclid eu = domain_of(euclid);
  Matrix coords(s.rank, bc.cols, cp);
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < bc.cols; ++j) {
      auto [q, r] = eu.divmod(ub.at(i, j), s.diag.at(i, i));
      if (!r.is_zero()) fail(ErrorKind::InvalidComplex, "subquotient: B is not contained in L");
      coords.at(i, j) = q;
    }
  for (int i = s.rank; i < ub.rows; ++i)
    for (int j = 0; j < ub.cols; ++j)
      if (!ub.at(i, j).is_zero()) fail(ErrorKind::InvalidComplex, "subquotient: B is not contained in L");
  ModuleInvariants out;
  SNF c = smith_normal_form(coords, euclid);
  out.free_rank = s.rank - c.rank;
  for (const auto& f : c.factors) {
    Poly st = strip_to_core(f, core);
    if (!st.is_one()) out.torsion.push_back(st);
  }
  return out;
}

}  // namespace adelic
