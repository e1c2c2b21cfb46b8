#include <benchmark/benchmark.h>

#include "ufofdm/design_problem.hpp"
#include "ufofdm/lp_solver.hpp"
#include "ufofdm/pipeline.hpp"
#include "ufofdm/spectral_factorization.hpp"

namespace {

void BM_AssembleLp(benchmark::State& state) {
  const auto spec = ufofdm::DesignSpec::defaults();
  const auto cf = ufofdm::shift_carriers(spec);
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::assemble_lp(spec, cf));
}
BENCHMARK(BM_AssembleLp)->Unit(benchmark::kMillisecond);

void BM_SolveDesignLp(benchmark::State& state) {
  const auto spec = ufofdm::DesignSpec::defaults(state.range(0) == 0 ? 1e-4 : 1.0);
  const auto lp = ufofdm::assemble_lp(spec, ufofdm::shift_carriers(spec));
  int iterations = 0;
  for (auto _ : state) {
    const auto s = ufofdm::solve_lp(lp);
    iterations = s.iterations;
    benchmark::DoNotOptimize(s.x.data());
  }
  state.counters["ipm_iterations"] = iterations;
}
BENCHMARK(BM_SolveDesignLp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Factorize(benchmark::State& state) {
  const auto g = ufofdm::design_filter(ufofdm::DesignSpec::defaults()).repaired;
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::factorize(g));
}
BENCHMARK(BM_Factorize)->Unit(benchmark::kMillisecond);

void BM_DesignPipeline(benchmark::State& state) {
  const auto spec = ufofdm::DesignSpec::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::design_filter(spec));
}
BENCHMARK(BM_DesignPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
