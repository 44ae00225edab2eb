#include "adelic/complex.hpp"

#include <algorithm>

namespace adelic {

// ---------------------------------------------------------------- BoundedComplex

BoundedComplex BoundedComplex::unit(const BaseRing& r) {
  BoundedComplex c(r);
  c.add_gen(0, {RingExpr::base(r), "1"});
  return c;
}

BoundedComplex BoundedComplex::free(const BaseRing& r, int lo, const std::vector<int>& ranks,
                                    const std::vector<Matrix>& d) {
  BoundedComplex c(r);
  for (size_t i = 0; i < ranks.size(); ++i)
    for (int k = 0; k < ranks[i]; ++k)
      c.add_gen(lo + static_cast<int>(i), {RingExpr::base(r), "e" + std::to_string(lo + static_cast<int>(i)) + "_" + std::to_string(k)});
  if (d.size() + 1 < ranks.size() && !ranks.empty() && d.size() != ranks.size() - 1)
    fail(ErrorKind::InvalidComplex, "expected " + std::to_string(ranks.size() - 1) + " differentials");
  for (size_t i = 0; i < d.size(); ++i) {
    int n = lo + static_cast<int>(i);
    int src = i < ranks.size() ? ranks[i] : 0, dst = i + 1 < ranks.size() ? ranks[i + 1] : 0;
    if (d[i].rows != dst || d[i].cols != src)
      fail(ErrorKind::InvalidComplex, "differential in degree " + std::to_string(n) + " has shape " +
                                          std::to_string(d[i].rows) + "x" + std::to_string(d[i].cols) +
                                          ", expected " + std::to_string(dst) + "x" + std::to_string(src));
    if (src && dst) c.set_diff(n, d[i]);
  }
  c.validate();
  return c;
}

int BoundedComplex::rank(int n) const {
  if (gens_.empty() || n < lo_ || n > hi()) return 0;
  return static_cast<int>(gens_[n - lo_].size());
}

int BoundedComplex::total_rank() const {
  int s = 0;
  for (const auto& g : gens_) s += static_cast<int>(g.size());
  return s;
}

const std::vector<Gen>& BoundedComplex::gens(int n) const {
  static const std::vector<Gen> none;
  if (gens_.empty() || n < lo_ || n > hi()) return none;
  return gens_[n - lo_];
}

Matrix BoundedComplex::diff(int n) const {
  Matrix m(rank(n + 1), rank(n), ring_.charp);
  if (gens_.empty() || n < lo_ || n > hi()) return m;
  const Matrix& s = d_[n - lo_];
  if (s.rows == m.rows && s.cols == m.cols) return s;
  // Stored matrices may lag behind generators added later; pad with zeros.
  for (int i = 0; i < std::min(s.rows, m.rows); ++i)
    for (int j = 0; j < std::min(s.cols, m.cols); ++j) m.at(i, j) = s.at(i, j);
  return m;
}

void BoundedComplex::ensure_degree(int n) {
  if (gens_.empty()) {
    lo_ = n;
    gens_.emplace_back();
    d_.emplace_back();
    return;
  }
  while (n < lo_) {
    gens_.insert(gens_.begin(), std::vector<Gen>{});
    d_.insert(d_.begin(), Matrix());
    --lo_;
  }
  while (n > hi()) {
    gens_.emplace_back();
    d_.emplace_back();
  }
}

void BoundedComplex::add_gen(int n, Gen g) {
  if (!(g.carrier.ring() == ring_)) fail(ErrorKind::InvalidComplex, "generator carrier over a different base ring");
  ensure_degree(n);
  gens_[n - lo_].push_back(std::move(g));
}

Matrix& BoundedComplex::diff_ref(int n) {
  ensure_degree(n);
  ensure_degree(n + 1);
  Matrix& m = d_[n - lo_];
  if (m.rows != rank(n + 1) || m.cols != rank(n)) m = diff(n);
  return m;
}

void BoundedComplex::set_diff(int n, Matrix m) {
  ensure_degree(n);
  ensure_degree(n + 1);
  if (m.rows != rank(n + 1) || m.cols != rank(n))
    fail(ErrorKind::InvalidComplex, "differential shape mismatch in degree " + std::to_string(n));
  d_[n - lo_] = std::move(m);
}

void BoundedComplex::trim() {
  while (!gens_.empty() && gens_.back().empty()) {
    gens_.pop_back();
    d_.pop_back();
  }
  while (!gens_.empty() && gens_.front().empty()) {
    gens_.erase(gens_.begin());
    d_.erase(d_.begin());
    ++lo_;
  }
  if (gens_.empty()) lo_ = 0;
  for (int n = lo_; n <= hi(); ++n) d_[n - lo_] = diff(n);
}

void BoundedComplex::validate() const {
  if (gens_.empty()) return;
  for (int n = lo_; n <= hi(); ++n) {
    Matrix dn = diff(n);
    const auto& src = gens(n);
    const auto& dst = gens(n + 1);
    for (int i = 0; i < dn.rows; ++i)
      for (int j = 0; j < dn.cols; ++j)
        if (!dn.at(i, j).is_zero() && !maps_to(src[j].carrier, dst[i].carrier))
          fail(ErrorKind::InvalidComplex, "no structural map " + src[j].carrier.key() + " -> " + dst[i].carrier.key() +
                                              " in degree " + std::to_string(n));
    if (!matmul(diff(n + 1), dn).is_zero())
      fail(ErrorKind::InvalidComplex, "d∘d != 0 at degree " + std::to_string(n));
  }
}

bool BoundedComplex::carriers_uniform() const {
  const RingExpr* first = nullptr;
  for (const auto& g : gens_)
    for (const auto& x : g) {
      if (!first) first = &x.carrier;
      else if (!(x.carrier == *first)) return false;
    }
  return true;
}

std::string BoundedComplex::str() const {
  if (gens_.empty()) return "0";
  std::string s;
  for (int n = lo_; n <= hi(); ++n) {
    s += "deg " + std::to_string(n) + ":";
    for (const auto& g : gens(n)) s += " " + g.label + "@" + g.carrier.key();
    s += "\n";
    if (n < hi()) s += "  d" + std::to_string(n) + " = " + diff(n).str() + "\n";
  }
  return s;
}

// ---------------------------------------------------------------- maps

Matrix ComplexMap::component(int n) const {
  auto it = components.find(n);
  if (it != components.end()) return it->second;
  return Matrix(target.rank(n), source.rank(n), source.ring().charp);
}

void ComplexMap::validate() const {
  int lo = std::min(source.empty() ? 0 : source.lo(), target.empty() ? 0 : target.lo());
  int hi = std::max(source.empty() ? 0 : source.hi(), target.empty() ? 0 : target.hi());
  for (const auto& [n, m] : components)
    if (m.rows != target.rank(n) || m.cols != source.rank(n))
      fail(ErrorKind::NonCommuting, "map component shape mismatch in degree " + std::to_string(n));
  for (int n = lo; n <= hi; ++n) {
    Matrix f = component(n);
    for (int i = 0; i < f.rows; ++i)
      for (int j = 0; j < f.cols; ++j)
        if (!f.at(i, j).is_zero() && !maps_to(source.gens(n)[j].carrier, target.gens(n)[i].carrier))
          fail(ErrorKind::NonCommuting, "no structural map " + source.gens(n)[j].carrier.key() + " -> " +
                                            target.gens(n)[i].carrier.key());
    if (!(matmul(target.diff(n), f) == matmul(component(n + 1), source.diff(n))))
      fail(ErrorKind::NonCommuting, "map does not commute with differentials in degree " + std::to_string(n));
  }
}

ComplexMap identity_map(const BoundedComplex& c) {
  ComplexMap f{c, c, {}};
  if (c.empty()) return f;
  for (int n = c.lo(); n <= c.hi(); ++n) f.components[n] = Matrix::identity(c.rank(n), c.ring().charp);
  return f;
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  ComplexMap h{f.source, g.target, {}};
  for (const auto& [n, m] : f.components) h.components[n] = matmul(g.component(n), m);
  return h;
}

ComplexMap scaled_map(const ComplexMap& f, const Poly& s) {
  ComplexMap h = f;
  for (auto& [n, m] : h.components)
    for (auto& x : m.e) x = x * s;
  return h;
}

// ---------------------------------------------------------------- constructions

BoundedComplex shift(const BoundedComplex& c, int k) {
  BoundedComplex out(c.ring());
  if (c.empty()) return out;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (const auto& g : c.gens(n)) out.add_gen(n - k, g);
  const bool odd = k % 2 != 0;
  for (int n = c.lo(); n < c.hi(); ++n) out.set_diff(n - k, odd ? -c.diff(n) : c.diff(n));
  return out;
}

namespace {

Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {  // [[a, b], [c, d]]
  Matrix m(a.rows + c.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m.at(i, a.cols + j) = b.at(i, j);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j) m.at(a.rows + i, j) = c.at(i, j);
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) m.at(a.rows + i, a.cols + j) = d.at(i, j);
  return m;
}

int range_lo(const BoundedComplex& a, const BoundedComplex& b) {
  if (a.empty()) return b.lo();
  if (b.empty()) return a.lo();
  return std::min(a.lo(), b.lo());
}

int range_hi(const BoundedComplex& a, const BoundedComplex& b) {
  if (a.empty()) return b.hi();
  if (b.empty()) return a.hi();
  return std::max(a.hi(), b.hi());
}

}  // namespace

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b) {
  BoundedComplex out(a.ring());
  if (a.empty() && b.empty()) return out;
  const int lo = range_lo(a, b), hi = range_hi(a, b);
  for (int n = lo; n <= hi; ++n) {
    for (const auto& g : a.gens(n)) out.add_gen(n, g);
    for (const auto& g : b.gens(n)) out.add_gen(n, g);
  }
  for (int n = lo; n < hi; ++n) {
    Matrix z1(a.rank(n + 1), b.rank(n)), z2(b.rank(n + 1), a.rank(n));
    out.set_diff(n, block2(a.diff(n), z1, z2, b.diff(n)));
  }
  out.trim();
  return out;
}

BoundedComplex cone(const ComplexMap& f) {
  const BoundedComplex& a = f.source;
  const BoundedComplex& b = f.target;
  BoundedComplex out(a.ring().kind == b.ring().kind ? b.ring() : a.ring());
  if (a.empty() && b.empty()) return out;
  const int lo = std::min(a.empty() ? b.lo() : a.lo() - 1, b.empty() ? a.lo() - 1 : b.lo());
  const int hi = std::max(a.empty() ? b.hi() : a.hi() - 1, b.empty() ? a.hi() - 1 : b.hi());
  for (int n = lo; n <= hi; ++n) {
    for (const auto& g : a.gens(n + 1)) out.add_gen(n, {g.carrier, "cone(" + g.label + ")"});
    for (const auto& g : b.gens(n)) out.add_gen(n, g);
  }
  for (int n = lo; n < hi; ++n) {
    Matrix z(a.rank(n + 2), b.rank(n));
    out.set_diff(n, block2(-a.diff(n + 1), z, f.component(n + 1), b.diff(n)));
  }
  out.trim();
  return out;
}

BoundedComplex tensor(const BoundedComplex& c, const BoundedComplex& d) {
  BoundedComplex out(c.ring());
  if (c.empty() || d.empty()) return out;
  // Index of (p, i, q, j) inside degree p+q.
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int n = c.lo() + d.lo(); n <= c.hi() + d.hi(); ++n) {
    int k = 0;
    for (int p = c.lo(); p <= c.hi(); ++p) {
      int q = n - p;
      for (int i = 0; i < c.rank(p); ++i)
        for (int j = 0; j < d.rank(q); ++j) {
          const Gen& a = c.gens(p)[i];
          const Gen& b = d.gens(q)[j];
          out.add_gen(n, {carrier_tensor(a.carrier, b.carrier), a.label + "⊗" + b.label});
          index[{p, i, q, j}] = k++;
        }
    }
  }
  for (int n = c.lo() + d.lo(); n < c.hi() + d.hi(); ++n) {
    Matrix m(out.rank(n + 1), out.rank(n), c.ring().charp);
    for (int p = c.lo(); p <= c.hi(); ++p) {
      int q = n - p;
      if (q < d.lo() || q > d.hi()) continue;
      Matrix dc = c.diff(p), dd = d.diff(q);
      const bool odd = ((p % 2) + 2) % 2 == 1;
      for (int i = 0; i < c.rank(p); ++i)
        for (int j = 0; j < d.rank(q); ++j) {
          int src = index.at({p, i, q, j});
          for (int i2 = 0; i2 < dc.rows; ++i2)
            if (!dc.at(i2, i).is_zero()) m.at(index.at({p + 1, i2, q, j}), src) += dc.at(i2, i);
          for (int j2 = 0; j2 < dd.rows; ++j2)
            if (!dd.at(j2, j).is_zero()) m.at(index.at({p, i, q + 1, j2}), src) += odd ? -dd.at(j2, j) : dd.at(j2, j);
        }
    }
    out.set_diff(n, std::move(m));
  }
  return retag(out, [](const RingExpr& e) { return e; });
}

BoundedComplex hom_complex(const BoundedComplex& c, const BoundedComplex& d) {
  BoundedComplex out(d.ring());
  if (c.empty() || d.empty()) return out;
  for (int p = c.lo(); p <= c.hi(); ++p)
    for (const auto& g : c.gens(p))
      if (g.carrier.kind() != ExprKind::Base)
        fail(ErrorKind::NotRepresentable, "Hom out of a non-free carrier " + g.carrier.key() + " needs a tower");
  // Hom^n = ⊕_p Hom(C^p, D^{p+n}); generator (p, i, j) sends c_j to d_i.
  std::map<std::tuple<int, int, int, int>, int> index;  // (n, p, i, j)
  const int lo = d.lo() - c.hi(), hi = d.hi() - c.lo();
  for (int n = lo; n <= hi; ++n) {
    int k = 0;
    for (int p = c.lo(); p <= c.hi(); ++p)
      for (int i = 0; i < d.rank(p + n); ++i)
        for (int j = 0; j < c.rank(p); ++j) {
          out.add_gen(n, {d.gens(p + n)[i].carrier, c.gens(p)[j].label + "^∨⊗" + d.gens(p + n)[i].label});
          index[{n, p, i, j}] = k++;
        }
  }
  for (int n = lo; n < hi; ++n) {
    Matrix m(out.rank(n + 1), out.rank(n), d.ring().charp);
    const bool odd = ((n % 2) + 2) % 2 == 1;
    for (int p = c.lo(); p <= c.hi(); ++p) {
      Matrix dd = d.diff(p + n);
      Matrix dcp = c.diff(p - 1);  // C^{p-1} -> C^p
      for (int i = 0; i < d.rank(p + n); ++i)
        for (int j = 0; j < c.rank(p); ++j) {
          auto it = index.find({n, p, i, j});
          if (it == index.end()) continue;
          const int src = it->second;
          // d_D ∘ f
          for (int i2 = 0; i2 < dd.rows; ++i2)
            if (!dd.at(i2, i).is_zero()) {
              m.at(index.at({n + 1, p, i2, j}), src) += dd.at(i2, i);
            }
          // -(-1)^n f ∘ d_C: lands in Hom(C^{p-1}, D^{p+n}).
          for (int j2 = 0; j2 < dcp.cols; ++j2)
            if (!dcp.at(j, j2).is_zero()) {
              const Poly& v = dcp.at(j, j2);
              m.at(index.at({n + 1, p - 1, i, j2}), src) += odd ? v : -v;
            }
        }
    }
    out.set_diff(n, std::move(m));
  }
  out.trim();
  return out;
}

BoundedComplex restrict_gens(const BoundedComplex& c, const std::function<bool(int, int)>& keep) {
  BoundedComplex out(c.ring());
  if (c.empty()) return out;
  std::map<int, std::vector<int>> kept;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (int i = 0; i < c.rank(n); ++i)
      if (keep(n, i)) {
        kept[n].push_back(i);
        out.add_gen(n, c.gens(n)[i]);
      }
  for (int n = c.lo(); n < c.hi(); ++n) {
    const auto& src = kept[n];
    const auto& dst = kept[n + 1];
    if (src.empty() || dst.empty()) continue;
    Matrix full = c.diff(n);
    Matrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()), c.ring().charp);
    for (size_t i = 0; i < dst.size(); ++i)
      for (size_t j = 0; j < src.size(); ++j) m.at(i, j) = full.at(dst[i], src[j]);
    out.set_diff(n, std::move(m));
  }
  out.trim();
  return out;
}

BoundedComplex retag(const BoundedComplex& c, const std::function<RingExpr(const RingExpr&)>& f) {
  BoundedComplex tagged(c.ring());
  if (c.empty()) return tagged;
  std::map<std::pair<int, int>, bool> zero;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (int i = 0; i < c.rank(n); ++i) {
      RingExpr e = f(c.gens(n)[i].carrier);
      zero[{n, i}] = e.is_zero();
      tagged.add_gen(n, {e, c.gens(n)[i].label});
    }
  for (int n = c.lo(); n < c.hi(); ++n) tagged.set_diff(n, c.diff(n));
  return restrict_gens(tagged, [&](int n, int i) { return !zero[{n, i}]; });
}

BoundedComplex base_change(const BoundedComplex& c, const RingExpr& e) {
  return retag(c, [&](const RingExpr& x) { return carrier_tensor(e, x); });
}

BoundedComplex koszul_complex(const BaseRing& r, const std::vector<Poly>& xs) {
  BoundedComplex k = BoundedComplex::unit(r);
  for (const auto& x : xs) {
    BoundedComplex two(r);
    two.add_gen(-1, {RingExpr::base(r), "k(" + x.str() + ")"});
    two.add_gen(0, {RingExpr::base(r), "1"});
    Matrix m(1, 1, r.charp);
    m.at(0, 0) = x;
    two.set_diff(-1, m);
    k = tensor(k, two);
  }
  return k;
}

BoundedComplex stable_koszul_complex(const BaseRing& r, const std::vector<Poly>& xs) {
  BoundedComplex k = BoundedComplex::unit(r);
  for (const auto& x : xs) {
    BoundedComplex two(r);
    two.add_gen(0, {RingExpr::base(r), "1"});
    two.add_gen(1, {rewrite(RingExpr::invert(RingExpr::base(r), {x})), "1/" + x.str()});
    two.set_diff(0, Matrix::identity(1, r.charp));
    k = tensor(k, two);
  }
  return k;
}

}  // namespace adelic
