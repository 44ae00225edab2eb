#include "adelic/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace adelic {

SpectrumPoset SpectrumPoset::make(const BaseRing& ring, std::vector<AlgPrime> primes,
                                  std::optional<std::vector<int>> dims,
                                  const std::vector<std::pair<int, int>>& containments) {
  const int n = static_cast<int>(primes.size());
  if (n == 0) fail(ErrorKind::InvalidScenario, "empty poset");
  for (const auto& p : primes)
    if (!(p.ring() == ring)) fail(ErrorKind::InvalidScenario, "prime " + p.key() + " over another ring");
  if (dims && static_cast<int>(dims->size()) != n)
    fail(ErrorKind::InvalidScenario, "dims has " + std::to_string(dims->size()) + " entries for " + std::to_string(n) + " primes");
  for (const auto& [a, b] : containments) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::InvalidScenario, "containment index out of range");
    if (!primes[b].contains(primes[a]))
      fail(ErrorKind::InvalidScenario, "declared containment " + primes[a].key() + " ⊆ " + primes[b].key() + " is false");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return primes[a] < primes[b]; });
  SpectrumPoset s;
  s.ring_ = ring;
  for (int i : order) {
    if (!s.primes_.empty() && s.primes_.back() == primes[i])
      fail(ErrorKind::InvalidScenario, "duplicate prime " + primes[i].key());
    s.primes_.push_back(primes[i]);
    s.dims_.push_back(dims ? (*dims)[i] : primes[i].dim());
  }
  s.sub_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.sub_[i][j] = s.primes_[j].contains(s.primes_[i]);

  // Longest chain of declared primes strictly containing p.
  std::vector<int> chain(n, -1);
  std::function<int(int)> height_above = [&](int i) {
    if (chain[i] >= 0) return chain[i];
    int best = 0;
    for (int j = 0; j < n; ++j)
      if (j != i && s.sub_[i][j]) best = std::max(best, height_above(j) + 1);
    return chain[i] = best;
  };
  for (int i = 0; i < n; ++i) {
    const int d = s.dims_[i];
    if (d < 0 || d > ring.krull_dim())
      fail(ErrorKind::InvalidScenario, "dimension " + std::to_string(d) + " out of range for " + s.primes_[i].key());
    const int c = height_above(i);
    if (c == 0 && d != 0) fail(ErrorKind::InvalidScenario, "closed point " + s.primes_[i].key() + " has dimension " + std::to_string(d));
    if (c != d)
      s.warnings_.push_back("declared dim " + std::to_string(d) + " of " + s.primes_[i].key() + " differs from in-poset chain length " +
                            std::to_string(c));
    for (int j = 0; j < n; ++j)
      if (j != i && s.sub_[i][j] && !(s.dims_[j] < d))
        fail(ErrorKind::InvalidScenario, "dimension not strictly monotone along " + s.primes_[i].key() + " ⊆ " + s.primes_[j].key());
  }
  s.r_ = *std::max_element(s.dims_.begin(), s.dims_.end());
  return s;
}

SpectrumPoset SpectrumPoset::full(const BaseRing& ring) {
  if (!ring.finite_spectrum()) fail(ErrorKind::UnsupportedRing, ring.key() + " has infinitely many primes");
  std::vector<AlgPrime> ps{AlgPrime::zero(ring)};
  for (const auto& p : ring.local_primes) ps.push_back(AlgPrime::make(ring, {Poly(Rat(p))}));
  return make(ring, ps);
}

int SpectrumPoset::index_of(const AlgPrime& p) const {
  for (int i = 0; i < size(); ++i)
    if (primes_[i] == p) return i;
  fail(ErrorKind::UnknownPrime, p.key() + " is not in the poset " + str());
}

bool SpectrumPoset::contains(const AlgPrime& p) const {
  return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
}

int SpectrumPoset::dim(const AlgPrime& p) const { return dims_[index_of(p)]; }

std::optional<AlgPrime> SpectrumPoset::generic() const {
  for (const auto& p : primes_)
    if (p.is_zero()) return p;
  return std::nullopt;
}

bool SpectrumPoset::balmer_le(const AlgPrime& p, const AlgPrime& q) const { return sub_[index_of(q)][index_of(p)]; }

std::vector<AlgPrime> SpectrumPoset::lambda_set(const AlgPrime& q) const {
  const int j = index_of(q);
  std::vector<AlgPrime> out;
  for (int i = 0; i < size(); ++i)
    if (sub_[j][i]) out.push_back(primes_[i]);
  return out;
}

std::vector<AlgPrime> SpectrumPoset::v_set(const AlgPrime& q) const {
  const int j = index_of(q);
  std::vector<AlgPrime> out;
  for (int i = 0; i < size(); ++i)
    if (sub_[i][j]) out.push_back(primes_[i]);
  return out;
}

std::vector<AlgPrime> SpectrumPoset::of_dim(int d) const {
  std::vector<AlgPrime> out;
  for (int i = 0; i < size(); ++i)
    if (dims_[i] == d) out.push_back(primes_[i]);
  return out;
}

bool SpectrumPoset::is_family(const std::vector<AlgPrime>& s) const {
  for (const auto& q : s)
    for (const auto& p : lambda_set(q))
      if (std::find(s.begin(), s.end(), p) == s.end()) return false;
  return true;
}

bool SpectrumPoset::covers_dim(int d) const {
  const int height = ring_.krull_dim() - d;
  if (height == 0) return generic().has_value();
  if (ring_.is_semilocal() && height == 1) {
    int declared = 0;
    for (const auto& p : primes_)
      if (!p.is_zero()) ++declared;
    return declared == static_cast<int>(ring_.local_primes.size());
  }
  return false;
}

void SpectrumPoset::check_expr(const RingExpr& e) const {
  if ((e.kind() == ExprKind::Localize || e.kind() == ExprKind::Complete) && e.at().prime && !contains(*e.at().prime))
    fail(ErrorKind::UnknownPrime, e.at().prime->key() + " in " + e.key() + " is not in the poset " + str());
  for (const auto& c : e.children()) check_expr(c);
}

std::string SpectrumPoset::str() const {
  std::string s = "{";
  for (int i = 0; i < size(); ++i) s += (i ? ", " : "") + primes_[i].key() + ":" + std::to_string(dims_[i]);
  return s + "}";
}

// ---------------------------------------------------------------- flags

Flag Flag::make(std::vector<int> dims) {
  if (dims.empty()) fail(ErrorKind::InvalidScenario, "empty flag");
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0) fail(ErrorKind::InvalidScenario, "negative dimension in flag");
    if (i && dims[i] >= dims[i - 1]) fail(ErrorKind::InvalidScenario, "flag dimensions must strictly decrease");
  }
  return Flag{std::move(dims)};
}

Flag Flag::without(int i) const {
  Flag f = *this;
  f.dims.erase(f.dims.begin() + i);
  return f;
}

bool Flag::contains(int d) const { return std::find(dims.begin(), dims.end(), d) != dims.end(); }

std::string Flag::str() const {
  std::string s = "(";
  for (size_t i = 0; i < dims.size(); ++i) s += (i ? ">" : "") + std::to_string(dims[i]);
  return s + ")";
}

bool Flag::operator<(const Flag& o) const {
  if (dims.size() != o.dims.size()) return dims.size() < o.dims.size();
  return dims > o.dims;
}

std::vector<Flag> all_flags(int r) {
  std::vector<Flag> out;
  for (unsigned mask = 1; mask < (1u << (r + 1)); ++mask) {
    Flag f;
    for (int d = r; d >= 0; --d)
      if (mask & (1u << d)) f.dims.push_back(d);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlagChains> enumerate_flags(const SpectrumPoset& poset) {
  std::vector<FlagChains> out;
  for (const auto& f : all_flags(poset.r())) {
    FlagChains fc{f, {}};
    std::vector<AlgPrime> cur;
    std::function<void(int)> extend = [&](int i) {
      if (i == f.size()) {
        fc.chains.push_back(cur);
        return;
      }
      for (const auto& p : poset.of_dim(f.dims[i])) {
        if (i > 0 && !p.contains(cur.back())) continue;
        cur.push_back(p);
        extend(i + 1);
        cur.pop_back();
      }
    };
    extend(0);
    out.push_back(std::move(fc));
  }
  return out;
}

}  // namespace adelic
