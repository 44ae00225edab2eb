#pragma once

// Independent reference computations for small integer data. Nothing here calls the library's
// elimination code.

#include "adelic/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using adelic::Int;
using IMat = std::vector<std::vector<long long>>;

inline Int gcd_int(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Cofactor expansion; fine for the k <= 5 minors used here.
inline Int det(const std::vector<std::vector<Int>>& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Int s = 0;
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Int>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      sub.push_back(row);
    }
    const Int t = m[0][c] * det(sub);
    s += (c % 2 ? -t : t);
  }
  return s;
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors (0 when every minor vanishes).
inline Int minor_gcd(const IMat& a, int k) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  if (k == 0) return 1;
  if (k > rows || k > cols) return 0;
  std::vector<std::vector<int>> rs, cs;
  std::vector<int> cur;
  subsets(rows, k, 0, cur, rs);
  subsets(cols, k, 0, cur, cs);
  Int g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
      g = gcd_int(g, det(m));
      if (g == 1) return g;
    }
  return g;
}

// Invariant factors d_k / d_{k-1} for k up to the rank; includes unit factors.
inline std::vector<Int> invariant_factors(const IMat& a) {
  std::vector<Int> out;
  Int prev = 1;
  for (int k = 1;; ++k) {
    const Int d = minor_gcd(a, k);
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

inline int rank(const IMat& a) { return static_cast<int>(invariant_factors(a).size()); }

inline Int ppart(Int n, long long p) {
  Int out = 1;
  if (n < 0) n = -n;
  while (n != 0 && n % p == 0) n /= p, out *= p;
  return out;
}

struct Homology {
  int free_rank = 0;
  std::vector<Int> torsion;  // non-unit invariant factors
  bool zero() const { return free_rank == 0 && torsion.empty(); }
};

// H = ker(dout) / im(din) at Z^mid. The kernel is a direct summand, so the torsion of H is the
// torsion of the cokernel of din. `p` > 0 localizes at (p).
inline Homology homology(const IMat& din, const IMat& dout, int mid, long long p = 0) {
  Homology h;
  const auto f = invariant_factors(din);
  const int rk_out = dout.empty() ? 0 : rank(dout);
  h.free_rank = mid - rk_out - static_cast<int>(f.size());
  for (const auto& d : f) {
    const Int t = p ? ppart(d, p) : (d < 0 ? Int(-d) : d);
    if (t != 1) h.torsion.push_back(t);
  }
  return h;
}

inline IMat product(const IMat& a, const IMat& b) {
  if (a.empty() || b.empty()) return {};
  IMat c(a.size(), std::vector<long long>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline IMat random_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IMat m(rows, std::vector<long long>(cols));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace oracle
