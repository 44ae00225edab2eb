#include <benchmark/benchmark.h>

#include "adelic/cube.hpp"
#include "adelic/verifier.hpp"

#include <random>

using namespace adelic;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-50, 50);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Poly(Rat(d(rng)));
  return m;
}

void BM_MatmulSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul_serial(a, b));
}

void BM_MatmulParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul_parallel(a, b));
}

void BM_InvariantFactors(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(n, 3);
  const Core core = Core::global(BaseRing::integers());
  for (auto _ : state) benchmark::DoNotOptimize(invariant_factors(a, core));
}

SpectrumPoset z_poset(int primes) {
  const BaseRing z = BaseRing::integers();
  std::vector<AlgPrime> ps = {AlgPrime::zero(z)};
  const char* small[] = {"2", "3", "5", "7", "11", "13"};
  for (int i = 0; i < primes; ++i) ps.push_back(AlgPrime::parse(z, {small[i]}));
  return SpectrumPoset::make(z, ps);
}

void BM_VerifyHasse(benchmark::State& state) {
  const CubeDiagram c = build_adelic_cube(BoundedComplex::unit(BaseRing::integers()), z_poset(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_pullback(c));
}

}  // namespace

BENCHMARK(BM_MatmulSerial)->Arg(16)->Arg(48)->Arg(96);
BENCHMARK(BM_MatmulParallel)->Arg(16)->Arg(48)->Arg(96);
BENCHMARK(BM_InvariantFactors)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_VerifyHasse)->Arg(1)->Arg(3)->Arg(6);

BENCHMARK_MAIN();
