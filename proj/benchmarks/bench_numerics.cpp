#include <benchmark/benchmark.h>

#include <random>

#include "ufofdm/numerics.hpp"

namespace {

void BM_Dft(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  ufofdm::ComplexSequence x(size);
  for (auto& v : x) v = {normal(rng), normal(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::dft(x, size));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(2)->Range(128, 4096)->Complexity(benchmark::oNLogN);

void BM_PolyRoots(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  std::vector<double> c(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto& v : c) v = normal(rng);
  const auto p = ufofdm::Polynomial::from_real(c);
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::poly_roots(p));
}
BENCHMARK(BM_PolyRoots)->Arg(14)->Arg(30)->Arg(62);

}  // namespace
