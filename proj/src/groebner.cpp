#include "adelic/groebner.hpp"

#include "adelic/errors.hpp"

#include <algorithm>
#include <deque>

namespace adelic {

namespace mp = boost::multiprecision;

namespace {

unsigned char_of(const std::vector<ModVec>& vs) {
  for (const auto& v : vs)
    for (const auto& p : v)
      if (p.charp()) return p.charp();
  return 0;
}

Rat field_div(const Rat& a, const Rat& b, unsigned charp) {
  if (charp == 0) return a / b;
  return reduce_mod(a * Rat(rat_mod_inverse(mp::numerator(b), charp)), charp);
}

bool is_homogeneous(const Poly& p) {
  int d = -1;
  for (const auto& [m, c] : p.terms()) {
    if (d < 0) d = m.degree();
    if (m.degree() != d) return false;
  }
  return true;
}

bool lead_greater(const ModLead& a, const ModLead& b, ModOrder order) {
  if (order == ModOrder::TermOverPosition) {
    if (!(a.mono == b.mono)) return deglex_greater(a.mono, b.mono);
    return a.comp < b.comp;
  }
  if (a.comp != b.comp) return a.comp < b.comp;
  return deglex_greater(a.mono, b.mono);
}

ModVec scale_shift(const ModVec& v, const Monomial& m, const Rat& c) {
  ModVec out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.times_monomial(m, c));
  return out;
}

void sub_in_place(ModVec& a, const ModVec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
}

int vec_degree(const ModVec& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.total_degree());
  return d;
}

}  // namespace

bool is_zero_vec(const ModVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

ModLead module_lead(const ModVec& v, ModOrder order) {
  ModLead best;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (v[i].is_zero()) continue;
    ModLead cand{i, v[i].lead_monomial(), v[i].lead_coeff()};
    if (best.comp < 0 || lead_greater(cand, best, order)) best = cand;
  }
  return best;
}

ModVec module_nf(const ModVec& v, const ModuleGB& gb) {
  const unsigned charp = char_of({v}) ? char_of({v}) : char_of(gb.basis);
  ModVec rem(v.size(), Poly(charp));
  ModVec p = v;
  std::vector<ModLead> leads;
  leads.reserve(gb.basis.size());
  for (const auto& g : gb.basis) leads.push_back(module_lead(g, gb.order));
  while (!is_zero_vec(p)) {
    ModLead l = module_lead(p, gb.order);
    bool reduced = false;
    for (size_t k = 0; k < gb.basis.size(); ++k) {
      const ModLead& gl = leads[k];
      if (gl.comp == l.comp && gl.mono.divides(l.mono)) {
        Rat f = field_div(l.coeff, gl.coeff, charp);
        sub_in_place(p, scale_shift(gb.basis[k], l.mono / gl.mono, f));
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem[l.comp].add_term(l.mono, l.coeff);
      p[l.comp].add_term(l.mono, -l.coeff);
    }
  }
  return rem;
}

namespace {

struct Pair {
  size_t i, j;
  int degree;
};

std::optional<ModVec> s_vector(const ModVec& a, const ModVec& b, ModOrder order, unsigned charp) {
  ModLead la = module_lead(a, order), lb = module_lead(b, order);
  if (la.comp != lb.comp) return std::nullopt;
  Monomial l = la.mono.lcm(lb.mono);
  ModVec s = scale_shift(a, l / la.mono, field_div(1, la.coeff, charp));
  sub_in_place(s, scale_shift(b, l / lb.mono, field_div(1, lb.coeff, charp)));
  return s;
}

void interreduce(ModuleGB& gb) {
  const unsigned charp = char_of(gb.basis);
  // Drop elements whose lead is divisible by another lead.
  std::vector<ModVec> kept;
  for (size_t i = 0; i < gb.basis.size(); ++i) {
    ModLead li = module_lead(gb.basis[i], gb.order);
    bool redundant = false;
    for (size_t j = 0; j < gb.basis.size() && !redundant; ++j) {
      if (i == j) continue;
      ModLead lj = module_lead(gb.basis[j], gb.order);
      if (lj.comp == li.comp && lj.mono.divides(li.mono)) {
        // Break ties between equal leads by index.
        redundant = !(lj.mono == li.mono) || j < i;
      }
    }
    if (!redundant) kept.push_back(gb.basis[i]);
  }
  gb.basis = kept;
  for (size_t i = 0; i < gb.basis.size(); ++i) {
    ModuleGB others{gb.rank, gb.order, {}};
    for (size_t j = 0; j < gb.basis.size(); ++j)
      if (j != i) others.basis.push_back(gb.basis[j]);
    ModLead li = module_lead(gb.basis[i], gb.order);
    // Keep the lead, reduce the tail.
    ModVec tail = gb.basis[i];
    tail[li.comp].add_term(li.mono, -li.coeff);
    ModVec red = module_nf(tail, others);
    red[li.comp].add_term(li.mono, li.coeff);
    Rat inv = field_div(1, li.coeff, charp);
    for (auto& p : red) p = p.scaled(inv);
    gb.basis[i] = red;
  }
  std::sort(gb.basis.begin(), gb.basis.end(), [&](const ModVec& a, const ModVec& b) {
    return lead_greater(module_lead(b, gb.order), module_lead(a, gb.order), gb.order);
  });
}

}  // namespace

ModuleGB module_gb(const std::vector<ModVec>& gens, int rank, ModOrder order, int degree_cap) {
  const unsigned charp = char_of(gens);
  ModuleGB gb{rank, order, {}};
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != rank) fail(ErrorKind::InvalidExpr, "module generator of wrong rank");
    if (!is_zero_vec(g)) gb.basis.push_back(g);
  }
  for (const auto& g : gb.basis)
    if (vec_degree(g) > degree_cap)
      fail(ErrorKind::DegreeBoundExceeded, "generator degree exceeds cap " + std::to_string(degree_cap));

  std::deque<Pair> pairs;
  auto add_pairs = [&](size_t j) {
    ModLead lj = module_lead(gb.basis[j], order);
    for (size_t i = 0; i < j; ++i) {
      ModLead li = module_lead(gb.basis[i], order);
      if (li.comp != lj.comp) continue;
      // Coprime leading monomials: the S-polynomial reduces to zero (ideal case only).
      if (rank == 1 && li.mono.lcm(lj.mono) == li.mono * lj.mono) continue;
      pairs.push_back({i, j, li.mono.lcm(lj.mono).degree()});
    }
  };
  for (size_t j = 0; j < gb.basis.size(); ++j) add_pairs(j);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(),
                               [](const Pair& a, const Pair& b) { return a.degree < b.degree; });
    Pair pr = *it;
    pairs.erase(it);
    auto s = s_vector(gb.basis[pr.i], gb.basis[pr.j], order, charp);
    if (!s) continue;
    ModVec r = module_nf(*s, gb);
    if (is_zero_vec(r)) continue;
    if (module_lead(r, order).mono.degree() > degree_cap)
      fail(ErrorKind::DegreeBoundExceeded, "Groebner basis element exceeds degree cap " + std::to_string(degree_cap));
    gb.basis.push_back(r);
    add_pairs(gb.basis.size() - 1);
  }
  interreduce(gb);
  return gb;
}

bool is_groebner_basis(const ModuleGB& gb) {
  const unsigned charp = char_of(gb.basis);
  for (size_t i = 0; i < gb.basis.size(); ++i)
    for (size_t j = i + 1; j < gb.basis.size(); ++j) {
      auto s = s_vector(gb.basis[i], gb.basis[j], gb.order, charp);
      if (s && !is_zero_vec(module_nf(*s, gb))) return false;
    }
  return true;
}

std::vector<Poly> ideal_gb(const std::vector<Poly>& gens, int degree_cap) {
  std::vector<ModVec> vs;
  for (const auto& g : gens) vs.push_back({g});
  ModuleGB gb = module_gb(vs, 1, ModOrder::TermOverPosition, degree_cap);
  std::vector<Poly> out;
  for (auto& v : gb.basis) out.push_back(v[0]);
  return out;
}

Poly ideal_nf(const Poly& f, const std::vector<Poly>& gb) {
  ModuleGB m{1, ModOrder::TermOverPosition, {}};
  for (const auto& g : gb) m.basis.push_back({g});
  return module_nf({f}, m)[0];
}

bool ideal_member(const Poly& f, const std::vector<Poly>& gb) { return ideal_nf(f, gb).is_zero(); }

std::optional<int> quotient_dimension(const std::vector<Poly>& gb) {
  if (gb.empty()) return std::nullopt;
  // Finite iff some lead is a pure power of x and some lead a pure power of y.
  int ax = -1, ay = -1;
  for (const auto& g : gb) {
    if (g.is_zero()) continue;
    const Monomial& m = g.lead_monomial();
    if (m.y == 0) ax = ax < 0 ? m.x : std::min(ax, m.x);
    if (m.x == 0) ay = ay < 0 ? m.y : std::min(ay, m.y);
  }
  if (ax < 0 || ay < 0) return std::nullopt;
  int count = 0;
  for (int i = 0; i < ax; ++i)
    for (int j = 0; j < ay; ++j) {
      Monomial m{i, j};
      bool divisible = std::any_of(gb.begin(), gb.end(),
                                   [&](const Poly& g) { return g.lead_monomial().divides(m); });
      if (!divisible) ++count;
    }
  return count;
}

std::vector<ModVec> kernel_generators(const PolyMatrix& a, int cols, int degree_cap) {
  const int rows = static_cast<int>(a.size());
  unsigned charp = 0;
  for (const auto& row : a)
    for (const auto& p : row)
      if (p.charp()) charp = p.charp();
  std::vector<ModVec> out;
  if (rows == 0) {
    for (int j = 0; j < cols; ++j) {
      ModVec e(cols, Poly(charp));
      e[j] = Poly(Rat(1), charp);
      out.push_back(e);
    }
    return out;
  }
  std::vector<ModVec> gens;
  for (int j = 0; j < cols; ++j) {
    ModVec v(rows + cols, Poly(charp));
    for (int i = 0; i < rows; ++i) v[i] = a[i][j];
    v[rows + j] = Poly(Rat(1), charp);
    gens.push_back(v);
  }
  ModuleGB gb = module_gb(gens, rows + cols, ModOrder::PositionOverTerm, degree_cap);
  for (const auto& g : gb.basis) {
    if (module_lead(g, gb.order).comp < rows) continue;
    out.emplace_back(g.begin() + rows, g.end());
  }
  return out;
}

namespace {

std::vector<long long> standard_counts(const ModuleGB& gb, int rank, int bound) {
  std::vector<long long> counts(bound + 1, 0);
  std::vector<ModLead> leads;
  for (const auto& g : gb.basis) leads.push_back(module_lead(g, gb.order));
  for (int d = 0; d <= bound; ++d)
    for (int c = 0; c < rank; ++c)
      for (int a = 0; a <= d; ++a) {
        Monomial m{a, d - a};
        bool divisible = std::any_of(leads.begin(), leads.end(), [&](const ModLead& l) {
          return l.comp == c && l.mono.divides(m);
        });
        if (!divisible) ++counts[d];
      }
  return counts;
}

}  // namespace

PolyHomology groebner_homology(const PolyMatrix& d_in, int in_rank, const PolyMatrix& d_out, int mid,
                               int hilbert_bound, int degree_cap) {
  const int out_rank = static_cast<int>(d_out.size());
  if (static_cast<int>(d_in.size()) != mid) fail(ErrorKind::InvalidExpr, "d_in row count must equal middle rank");
  // d_out * d_in = 0
  for (int i = 0; i < out_rank; ++i)
    for (int j = 0; j < in_rank; ++j) {
      Poly s;
      for (int k = 0; k < mid; ++k) s += d_out[i][k] * d_in[k][j];
      if (!s.is_zero()) fail(ErrorKind::CompositionNonzero, "d_out * d_in has nonzero entry " + s.str());
    }
  PolyHomology h;
  for (const auto& row : d_in)
    for (const auto& p : row) h.homogeneous = h.homogeneous && is_homogeneous(p);
  for (const auto& row : d_out)
    for (const auto& p : row) h.homogeneous = h.homogeneous && is_homogeneous(p);

  h.kernel = kernel_generators(d_out, mid, degree_cap);
  for (int j = 0; j < in_rank; ++j) {
    ModVec v;
    for (int i = 0; i < mid; ++i) v.push_back(d_in[i][j]);
    h.image.push_back(v);
  }
  ModuleGB im = module_gb(h.image, mid, ModOrder::TermOverPosition, degree_cap);
  ModuleGB ker = module_gb(h.kernel, mid, ModOrder::TermOverPosition, degree_cap);
  h.is_zero = std::all_of(h.kernel.begin(), h.kernel.end(),
                          [&](const ModVec& g) { return is_zero_vec(module_nf(g, im)); });
  auto si = standard_counts(im, mid, hilbert_bound);
  auto sk = standard_counts(ker, mid, hilbert_bound);
  h.hilbert.resize(hilbert_bound + 1);
  for (int d = 0; d <= hilbert_bound; ++d) h.hilbert[d] = si[d] - sk[d];
  return h;
}

bool homology_vanishes_locally(const PolyHomology& h, int mid, const std::vector<Poly>& prime_gb, int degree_cap) {
  ModuleGB im = module_gb(h.image, mid, ModOrder::TermOverPosition, degree_cap);
  for (const auto& g : h.kernel) {
    if (is_zero_vec(module_nf(g, im))) continue;
    PolyMatrix m(mid);
    for (int i = 0; i < mid; ++i) {
      m[i].push_back(g[i]);
      for (const auto& v : h.image) m[i].push_back(v[i]);
    }
    auto syz = kernel_generators(m, 1 + static_cast<int>(h.image.size()), degree_cap);
    bool escapes = false;
    for (const auto& s : syz)
      if (!s[0].is_zero() && !ideal_member(s[0], prime_gb)) {
        escapes = true;
        break;
      }
    if (!escapes) return false;
  }
  return true;
}

Poly exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::InvalidExpr, "division by zero polynomial");
  const unsigned charp = a.charp() ? a.charp() : b.charp();
  Poly q(charp), p = a;
  while (!p.is_zero()) {
    if (!b.lead_monomial().divides(p.lead_monomial()))
      fail(ErrorKind::InvalidExpr, b.str() + " does not divide " + a.str());
    Monomial m = p.lead_monomial() / b.lead_monomial();
    Rat c = field_div(p.lead_coeff(), b.lead_coeff(), charp);
    q.add_term(m, c);
    p -= b.times_monomial(m, c);
  }
  return q;
}

bool divides(const Poly& b, const Poly& a) {
  try {
    exact_divide(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

int fraction_field_rank(const PolyMatrix& a0, int cols) {
  PolyMatrix a = a0;
  const int rows = static_cast<int>(a.size());
  unsigned charp = 0;
  for (const auto& row : a)
    for (const auto& p : row)
      if (p.charp()) charp = p.charp();
  Poly prev(Rat(1), charp);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int j = c + 1; j < cols; ++j)
        a[r][j] = exact_divide(a[rank][c] * a[r][j] - a[r][c] * a[rank][j], prev);
      a[r][c] = Poly(charp);
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace adelic
