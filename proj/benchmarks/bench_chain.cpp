#include <benchmark/benchmark.h>

#include "ufofdm/analysis.hpp"
#include "ufofdm/chain.hpp"
#include "ufofdm/pipeline.hpp"

namespace {

const ufofdm::FirFilter& default_filter() {
  static const auto f = ufofdm::design_filter(ufofdm::DesignSpec::defaults()).filter;
  return f;
}

ufofdm::ChainConfig default_chain() {
  return ufofdm::ChainConfig{128, 16, ufofdm::DesignSpec::defaults().carriers, default_filter()};
}

// One full Rayleigh frame: bits, modulation, filtering, channel, ZF receiver, decisions.
void BM_ChainFrame(benchmark::State& state) {
  const ufofdm::Transceiver tr(default_chain());
  const auto& carriers = tr.config().carriers;
  auto rng = ufofdm::make_stream(1, 0, 0);
  ufofdm::Bits bits(2 * carriers.size());
  for (auto _ : state) {
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    auto ch = ufofdm::draw_channel(12, rng);
    ch.sigma_n = 0.1;
    const auto r = ufofdm::channel_apply(tr.transmit(ufofdm::qpsk_modulate(bits, carriers)), ch, 16, rng);
    benchmark::DoNotOptimize(ufofdm::qpsk_demodulate(tr.receive(r, ch)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bits.size()));
}
BENCHMARK(BM_ChainFrame);

void BM_BerPoint(benchmark::State& state) {
  ufofdm::BerOptions opt;
  opt.snr_db = {10.0};
  opt.bits_per_point = 100000;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::run_ber_experiment(default_chain(), opt));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opt.bits_per_point));
}
BENCHMARK(BM_BerPoint)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_PaprSymbols(benchmark::State& state) {
  ufofdm::PaprOptions opt;
  opt.symbols = 10000;
  opt.interpolation = static_cast<int>(state.range(0));
  const auto spec = ufofdm::DesignSpec::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(ufofdm::compute_papr_ccdf(default_filter(), spec, opt));
  state.SetItemsProcessed(state.iterations() * opt.symbols);
}
BENCHMARK(BM_PaprSymbols)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
