#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "ufofdm/chain.hpp"
#include "ufofdm/errors.hpp"
#include "ufofdm/pipeline.hpp"
#include "ufofdm/reference_filters.hpp"

namespace {

using ufofdm::cplx;
using ufofdm::kPi;

std::vector<int> default_carriers() { return ufofdm::parse_carriers("4:19", 128); }

ufofdm::Bits random_bits(ufofdm::RngStream& rng, std::size_t n) {
  ufofdm::Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
  return b;
}

const ufofdm::FirFilter& default_filter() {
  static const ufofdm::FirFilter f = ufofdm::design_filter(ufofdm::DesignSpec::defaults()).filter;
  return f;
}

ufofdm::ChainConfig default_config(const ufofdm::FirFilter& f) {
  ufofdm::ChainConfig cfg;
  cfg.M = 128;
  cfg.D = 16;
  cfg.carriers = default_carriers();
  cfg.filter = f;
  return cfg;
}

TEST(Qpsk, GrayMappingAndUnitEnergy) {
  const std::vector<int> J{3};
  const double a = 1.0 / std::sqrt(2.0);
  const std::array<std::pair<std::array<std::uint8_t, 2>, cplx>, 4> table{{
      {{0, 0}, {a, a}}, {{1, 0}, {-a, a}}, {{0, 1}, {a, -a}}, {{1, 1}, {-a, -a}}}};
  for (const auto& [bits, sym] : table) {
    const auto frame = ufofdm::qpsk_modulate(bits, J);
    EXPECT_EQ(frame.symbols[0], sym);
    EXPECT_NEAR(std::norm(frame.symbols[0]), 1.0, 1e-15);
    const auto back = ufofdm::qpsk_demodulate(frame);
    EXPECT_EQ(back[0], bits[0]);
    EXPECT_EQ(back[1], bits[1]);
  }
}

TEST(Qpsk, ZeroSymbolDecidesZeroBits) {
  ufofdm::SymbolFrame frame{{0}, {cplx{0.0, 0.0}}};
  EXPECT_EQ(ufofdm::qpsk_demodulate(frame), (ufofdm::Bits{0, 0}));
}

TEST(Qpsk, BitCountMustMatchCarriers) {
  const std::vector<int> J{0, 1};
  const ufofdm::Bits odd{0, 1, 1};
  const ufofdm::Bits few{0, 1};
  EXPECT_THROW(ufofdm::qpsk_modulate(odd, J), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::qpsk_modulate(few, J), ufofdm::ParameterError);
}

TEST(Qpsk, RandomSymbolMoments) {
  auto rng = ufofdm::make_stream(11, 0, 0);
  const std::vector<int> J{0};
  cplx mean{};
  double energy = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const auto s = ufofdm::qpsk_modulate(random_bits(rng, 2), J).symbols[0];
    mean += s;
    energy += std::norm(s);
  }
  EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.01);
  EXPECT_NEAR(energy / n, 1.0, 0.01);
}

TEST(OfdmModulate, Examples) {
  const auto x = ufofdm::ofdm_modulate({{0}, {cplx{1.0, 0.0}}}, 4);
  ASSERT_EQ(x.size(), 4u);
  for (const auto& v : x) EXPECT_NEAR(std::abs(v - cplx{0.5, 0.0}), 0.0, 1e-15);

  ufofdm::SymbolFrame zero{default_carriers(), ufofdm::ComplexSequence(16, cplx{})};
  for (const auto& v : ufofdm::ofdm_modulate(zero, 128)) EXPECT_EQ(v, cplx{});
}

TEST(OfdmModulate, MatchesDirectSumAndParseval) {
  auto rng = ufofdm::make_stream(12, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto frame = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
    const auto x = ufofdm::ofdm_modulate(frame, 128);
    const auto ref = oracle::ofdm_direct(frame, 128);
    double ex = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      EXPECT_NEAR(std::abs(x[n] - ref[n]), 0.0, 1e-12);
      ex += std::norm(x[n]);
    }
    EXPECT_NEAR(ex, 16.0, 1e-12);
  }
}

TEST(ApplyFilter, Examples) {
  const ufofdm::ComplexSequence x{1.0, 0.0, 0.0};
  EXPECT_EQ(ufofdm::apply_filter(x, ufofdm::identity_filter()), x);
  const auto y = ufofdm::apply_filter(x, ufofdm::FirFilter{{2.0, 1.0}});
  EXPECT_EQ(y, (ufofdm::ComplexSequence{2.0, 1.0, 0.0, 0.0}));
}

TEST(ApplyFilter, MatchesDirectConvolution) {
  auto rng = ufofdm::make_stream(13, 0, 0);
  ufofdm::ComplexSequence x(37), h(9);
  for (auto& v : x) v = ufofdm::complex_normal(rng, 1.0);
  for (auto& v : h) v = ufofdm::complex_normal(rng, 1.0);
  const auto y = ufofdm::apply_filter(x, h);
  const auto ref = oracle::convolve(x, h);
  ASSERT_EQ(y.size(), 45u);
  for (std::size_t n = 0; n < y.size(); ++n) EXPECT_NEAR(std::abs(y[n] - ref[n]), 0.0, 1e-12);
}

TEST(ApplyFilter, DefaultFilterConservesMeanPower) {
  const ufofdm::Transceiver tx(default_config(default_filter()));
  auto rng = ufofdm::make_stream(14, 0, 0);
  double energy = 0.0;
  const int frames = 10000;
  for (int i = 0; i < frames; ++i) {
    const auto y = tx.filtered_symbol(ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers()));
    for (const auto& v : y) energy += std::norm(v);
  }
  // b_c' g = K(M+N-1) means the mean energy per filtered symbol is K (M+N-1)/M.
  const double expected = 16.0 * (128.0 + 16.0 - 1.0) / 128.0;
  EXPECT_NEAR(energy / frames, expected, 0.01 * expected);
  EXPECT_NEAR(oracle::expected_output_energy(tx.shifted_taps(), 128, default_carriers()), expected, 1e-9 * expected);
}

TEST(ZeroPad, Lengths) {
  const ufofdm::ComplexSequence y(143, cplx{1.0, 1.0});
  EXPECT_EQ(ufofdm::zero_pad_tx(y, 0), y);
  const auto t = ufofdm::zero_pad_tx(y, 16);
  ASSERT_EQ(t.size(), 159u);
  for (std::size_t n = 143; n < 159; ++n) EXPECT_EQ(t[n], cplx{});
  EXPECT_THROW(ufofdm::zero_pad_tx(y, -1), ufofdm::ParameterError);
  const ufofdm::Transceiver tr(default_config(default_filter()));
  auto rng = ufofdm::make_stream(15, 0, 0);
  EXPECT_EQ(tr.transmit(ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers())).size(), 159u);
}

TEST(ChannelApply, TransparentAndDelay) {
  auto rng = ufofdm::make_stream(16, 0, 0);
  const ufofdm::ComplexSequence y{1.0, cplx{2.0, -1.0}, 3.0, 0.0};
  EXPECT_EQ(ufofdm::channel_apply(y, {{1.0}, 0.0}, 0, rng), y);
  const auto d = ufofdm::channel_apply(y, {{0.0, 1.0}, 0.0}, 1, rng);
  EXPECT_EQ(d, (ufofdm::ComplexSequence{0.0, 1.0, cplx{2.0, -1.0}, 3.0}));
}

TEST(ChannelApply, NoiseVariance) {
  auto rng = ufofdm::make_stream(17, 0, 0);
  const ufofdm::ComplexSequence zeros(1000, cplx{});
  double acc = 0.0;
  for (int i = 0; i < 1000; ++i) {
    for (const auto& v : ufofdm::channel_apply(zeros, {{1.0}, 1.0}, 0, rng)) acc += std::norm(v);
  }
  EXPECT_NEAR(acc / 1e6, 1.0, 0.01);
}

TEST(ChannelApply, GuardMustCoverChannelMemory) {
  auto rng = ufofdm::make_stream(18, 0, 0);
  const ufofdm::ComplexSequence y(10, cplx{1.0, 0.0});
  const ufofdm::ChannelRealization ch{ufofdm::ComplexSequence(5, cplx{0.2, 0.0}), 0.0};
  EXPECT_THROW(ufofdm::channel_apply(y, ch, 3, rng), ufofdm::ConfigurationError);
  EXPECT_NO_THROW(ufofdm::channel_apply(y, ch, 4, rng));
}

TEST(DrawChannel, TapStatistics) {
  auto rng = ufofdm::make_stream(19, 0, 0);
  EXPECT_EQ(ufofdm::draw_channel(1, rng).length(), 1);
  const int draws = 100000;
  double total = 0.0, single = 0.0;
  cplx cross{};
  for (int i = 0; i < draws; ++i) {
    const auto ch = ufofdm::draw_channel(12, rng);
    for (const auto& h : ch.taps) total += std::norm(h);
    cross += ch.taps[0] * std::conj(ch.taps[1]);
    single += std::norm(ufofdm::draw_channel(1, rng).taps[0]);
  }
  EXPECT_NEAR(total / draws, 1.0, 0.01);
  EXPECT_NEAR(single / draws, 1.0, 0.01);
  // Normalized by the per-tap variance 1/12.
  EXPECT_LT(std::abs(cross / static_cast<double>(draws)) * 12.0, 0.01);
  EXPECT_THROW(ufofdm::draw_channel(0, rng), ufofdm::ParameterError);
}

TEST(DrawChannel, RealTapsOption) {
  auto rng = ufofdm::make_stream(20, 0, 0);
  double total = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const auto ch = ufofdm::draw_channel(4, rng, ufofdm::FadingTaps::real_gaussian);
    for (const auto& h : ch.taps) {
      EXPECT_EQ(h.imag(), 0.0);
      total += std::norm(h);
    }
  }
  EXPECT_NEAR(total / 20000, 1.0, 0.02);
}

TEST(Receiver, FlatChannelInvertsExactly) {
  auto rng = ufofdm::make_stream(21, 0, 0);
  for (const auto& f : {ufofdm::identity_filter(), ufofdm::FirFilter{{1.0, 0.3, -0.2}}, default_filter()}) {
    const ufofdm::Transceiver tr(default_config(f));
    const auto frame = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
    const ufofdm::ChannelRealization ch{{1.0}, 0.0};
    const auto r = ufofdm::channel_apply(tr.transmit(frame), ch, 16, rng);
    const auto est = tr.receive(r, ch);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(est.symbols[i] - frame.symbols[i]), 0.0, 1e-10);
  }
}

TEST(Receiver, MultipathRoundTrip) {
  auto rng = ufofdm::make_stream(22, 0, 0);
  const ufofdm::Transceiver tr(default_config(default_filter()));
  for (int trial = 0; trial < 50; ++trial) {
    const auto ch = ufofdm::draw_channel(12, rng);
    ASSERT_TRUE(tr.equalizable(ch));
    const auto frame = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
    const auto est = tr.receive(ufofdm::channel_apply(tr.transmit(frame), ch, 16, rng), ch);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(est.symbols[i] - frame.symbols[i]), 0.0, 1e-9);
    EXPECT_EQ(ufofdm::qpsk_demodulate(est), ufofdm::qpsk_demodulate(frame));
  }
}

TEST(Receiver, ReadsEvenBinsOfTheDoubleLengthTransform) {
  auto rng = ufofdm::make_stream(23, 0, 0);
  const auto cfg = default_config(default_filter());
  const ufofdm::Transceiver tr(cfg);
  const auto frame = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
  const auto tx = tr.transmit(frame);
  const ufofdm::ChannelRealization ch{{1.0}, 0.0};
  const auto est = ufofdm::receive_equalize(tx, cfg, ch);
  for (std::size_t i = 0; i < 16; ++i) {
    const double w = 2.0 * kPi * default_carriers()[i] / 128.0;
    const cplx R = oracle::dtft(tx, w);
    const cplx F = oracle::dtft(tr.shifted_taps(), w);
    EXPECT_NEAR(std::abs(est.symbols[i] - R / (std::sqrt(128.0) * F)), 0.0, 1e-10);
  }
}

TEST(Receiver, IdentityFilterWithoutGuardIsPlainOfdm) {
  auto rng = ufofdm::make_stream(24, 0, 0);
  auto cfg = default_config(ufofdm::identity_filter());
  cfg.D = 0;
  const ufofdm::Transceiver tr(cfg);
  const auto frame = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
  const auto tx = tr.transmit(frame);
  const auto ref = oracle::ofdm_direct(frame, 128);
  ASSERT_EQ(tx.size(), 128u);
  for (std::size_t n = 0; n < 128; ++n) EXPECT_NEAR(std::abs(tx[n] - ref[n]), 0.0, 1e-12);
}

TEST(Receiver, PerBinNoiseVariance) {
  auto rng = ufofdm::make_stream(25, 0, 0);
  auto cfg = default_config(ufofdm::identity_filter());
  cfg.D = 0;
  const ufofdm::Transceiver tr(cfg);
  const ufofdm::ChannelRealization ch{{1.0}, 1.0};
  const auto frame = ufofdm::qpsk_modulate(ufofdm::Bits(32, 0), default_carriers());
  const auto tx = tr.transmit(frame);
  const int trials = 100000 / 16;
  double acc = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto est = tr.receive(ufofdm::channel_apply(tx, ch, 0, rng), ch);
    for (std::size_t k = 0; k < 16; ++k) acc += std::norm(est.symbols[k] - frame.symbols[k]);
  }
  EXPECT_NEAR(acc / (trials * 16.0), 1.0, 0.02);
}

// With a filter the noise on A_k is (M+N+D-1) sigma^2 / (M |F H|^2).
TEST(Receiver, FilteredNoiseVarianceMatchesClosedForm) {
  auto rng = ufofdm::make_stream(26, 0, 0);
  const ufofdm::Transceiver tr(default_config(default_filter()));
  const ufofdm::ChannelRealization ch{{1.0}, 0.5};
  const auto frame = ufofdm::qpsk_modulate(ufofdm::Bits(32, 0), default_carriers());
  const auto tx = tr.transmit(frame);
  const int trials = 20000;
  std::vector<double> acc(16, 0.0);
  for (int i = 0; i < trials; ++i) {
    const auto est = tr.receive(ufofdm::channel_apply(tx, ch, 16, rng), ch);
    for (std::size_t k = 0; k < 16; ++k) acc[k] += std::norm(est.symbols[k] - frame.symbols[k]);
  }
  for (std::size_t k = 0; k < 16; ++k) {
    const double expected = 159.0 * 0.25 / (128.0 * std::norm(tr.filter_response()[k]));
    EXPECT_NEAR(acc[k] / trials, expected, 0.05 * expected) << "carrier " << k;
  }
}

TEST(Receiver, SpectralNullIsReported) {
  ufofdm::ChainConfig cfg;
  cfg.M = 8;
  cfg.D = 0;
  cfg.carriers = {0, 1, 2, 3, 4};
  cfg.filter = ufofdm::FirFilter{{1.0, 0.0, 1.0}};
  // The midpoint is 2, so the shifted taps are [1, 0, -1], which vanish at bins 0 and 4.
  const ufofdm::Transceiver tr(cfg);
  const ufofdm::ChannelRealization ch{{1.0}, 0.0};
  EXPECT_FALSE(tr.equalizable(ch));
  const ufofdm::ComplexSequence r(10, cplx{1.0, 0.0});
  EXPECT_THROW(tr.receive(r, ch), ufofdm::SpectralNullError);
}

TEST(ChainConfig, Validation) {
  auto cfg = default_config(default_filter());
  EXPECT_NO_THROW(cfg.validate());
  cfg.D = -1;
  EXPECT_THROW(cfg.validate(), ufofdm::ConfigurationError);
  cfg.D = 114;
  EXPECT_THROW(cfg.validate(), ufofdm::ConfigurationError);
  cfg.D = 113;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.transmit_length(), 256);
}

TEST(Chain, LinearInTheFrameWithoutNoise) {
  auto rng = ufofdm::make_stream(27, 0, 0);
  const ufofdm::Transceiver tr(default_config(default_filter()));
  const auto a = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
  const auto b = ufofdm::qpsk_modulate(random_bits(rng, 32), default_carriers());
  ufofdm::SymbolFrame sum = a;
  for (std::size_t i = 0; i < 16; ++i) sum.symbols[i] += b.symbols[i];
  const auto ya = tr.transmit(a);
  const auto yb = tr.transmit(b);
  const auto ys = tr.transmit(sum);
  for (std::size_t n = 0; n < ys.size(); ++n) EXPECT_NEAR(std::abs(ys[n] - ya[n] - yb[n]), 0.0, 1e-12);
}

TEST(Chain, ShiftLeavesUsedBinGainsAndPowerUnchanged) {
  const auto& f = default_filter();
  const auto base = default_carriers();
  const auto spec = ufofdm::DesignSpec::defaults();
  for (int s : {1, 17, 60, 108}) {
    std::vector<int> moved;
    for (int k : base) moved.push_back((k + s) % 128);
    auto cfg_a = default_config(f);
    auto cfg_b = default_config(f);
    cfg_b.carriers = moved;
    const ufofdm::Transceiver a(cfg_a), b(cfg_b);
    for (std::size_t i = 0; i < 16; ++i) {
      EXPECT_NEAR(std::abs(a.filter_response()[i]), std::abs(b.filter_response()[i]), 1e-12);
    }
    EXPECT_NEAR(oracle::expected_output_energy(a.shifted_taps(), 128, base),
                oracle::expected_output_energy(b.shifted_taps(), 128, moved), 1e-9);
  }
  (void)spec;
}

TEST(Chain, NoiselessFramesHaveNoBitErrors) {
  auto rng = ufofdm::make_stream(28, 0, 0);
  const ufofdm::Transceiver tr(default_config(default_filter()));
  std::size_t errors = 0;
  for (int i = 0; i < 100000 / 32 + 1; ++i) {
    const auto ch = ufofdm::draw_channel(12, rng);
    if (!tr.equalizable(ch)) continue;
    const auto bits = random_bits(rng, 32);
    const auto est = tr.receive(ufofdm::channel_apply(tr.transmit(ufofdm::qpsk_modulate(bits, default_carriers())), ch, 16, rng), ch);
    const auto out = ufofdm::qpsk_demodulate(est);
    for (std::size_t j = 0; j < 32; ++j) errors += out[j] != bits[j];
  }
  EXPECT_EQ(errors, 0u);
}

}  // namespace
