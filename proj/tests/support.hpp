#pragma once

#include "adelic/adelic_module.hpp"
#include "adelic/local_functors.hpp"
#include "oracles.hpp"

#include <string>
#include <vector>

namespace testing_support {

using namespace adelic;

inline Matrix to_matrix(const oracle::IMat& a, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Poly(Rat(a[i][j]));
  return m;
}

inline Matrix mat(const BaseRing& r, const std::vector<std::vector<std::string>>& rows) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()), r.charp);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = r.element(rows[i][j]);
  return m;
}

inline AlgPrime prime(const BaseRing& r, std::vector<std::string> gens) { return AlgPrime::parse(r, gens); }

// R --n--> R in degrees -1, 0: the cyclic module R/(n).
inline BoundedComplex cyclic(const BaseRing& r, const std::string& n) {
  return BoundedComplex::free(r, -1, {1, 1}, {mat(r, {{n}})});
}

inline BoundedComplex over(const BoundedComplex& c, const RingExpr& e) {
  return retag(c, [&](const RingExpr&) { return e; });
}

inline bool all_acyclic(const std::vector<TestReport>& ts) {
  for (const auto& t : ts)
    if (!t.acyclic()) return false;
  return true;
}

inline SpectrumPoset z_poset(std::vector<std::string> ps) {
  const BaseRing z = BaseRing::integers();
  std::vector<AlgPrime> out = {AlgPrime::zero(z)};
  for (const auto& p : ps) out.push_back(prime(z, {p}));
  return SpectrumPoset::make(z, out);
}

inline SpectrumPoset kxy_chain() {
  const BaseRing r = BaseRing::bivariate(0);
  return SpectrumPoset::make(r, {AlgPrime::zero(r), prime(r, {"x"}), prime(r, {"x", "y"})}, std::vector<int>{2, 1, 0}, {{0, 1}, {1, 2}});
}

}  // namespace testing_support
