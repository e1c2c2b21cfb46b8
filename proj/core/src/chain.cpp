#include "ufofdm/chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ufofdm/design_problem.hpp"
#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

constexpr double kNullThreshold = 1e-12;

cplx response_at(std::span<const cplx> taps, double omega) {
  cplx acc = 0.0;
  for (std::size_t n = 0; n < taps.size(); ++n) acc += taps[n] * std::polar(1.0, -omega * static_cast<double>(n));
  return acc;
}

}  // namespace

void ChainConfig::validate() const {
  if (M < 1 || !is_power_of_two(static_cast<std::size_t>(M))) throw ConfigurationError("M must be a power of two");
  if (D < 0) throw ConfigurationError("zero padding D must be nonnegative");
  if (filter.taps.empty()) throw ConfigurationError("chain filter has no taps");
  if (transmit_length() > 2 * M) {
    throw ConfigurationError("M+N+D-1 = " + std::to_string(transmit_length()) +
                             " exceeds the 2M receive window");
  }
  carrier_run_start(M, carriers);
}

SymbolFrame qpsk_modulate(std::span<const std::uint8_t> bits, std::span<const int> carriers) {
  if (bits.size() % 2 != 0) throw ParameterError("QPSK needs an even number of bits");
  if (bits.size() != 2 * carriers.size()) throw ParameterError("QPSK needs exactly two bits per carrier");
  SymbolFrame frame;
  frame.carriers.assign(carriers.begin(), carriers.end());
  frame.symbols.resize(carriers.size());
  const double a = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    frame.symbols[i] = {bits[2 * i] ? -a : a, bits[2 * i + 1] ? -a : a};
  }
  return frame;
}

Bits qpsk_demodulate(const SymbolFrame& frame) {
  Bits bits(2 * frame.symbols.size());
  for (std::size_t i = 0; i < frame.symbols.size(); ++i) {
    bits[2 * i] = frame.symbols[i].real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = frame.symbols[i].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

ComplexSequence ofdm_modulate(const SymbolFrame& frame, int M) {
  ComplexSequence bins(static_cast<std::size_t>(M), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < frame.carriers.size(); ++i) {
    const int k = frame.carriers[i];
    if (k < 0 || k >= M) throw ParameterError("carrier index outside [0, M-1]");
    bins[static_cast<std::size_t>(k)] += frame.symbols[i];
  }
  // idft carries 1/M; the waveform wants 1/sqrt(M).
  ComplexSequence x = idft(bins, static_cast<std::size_t>(M));
  const double scale = std::sqrt(static_cast<double>(M));
  for (cplx& v : x) v *= scale;
  return x;
}

ComplexSequence band_shifted_taps(const FirFilter& f, int M, std::span<const int> carriers) {
  const double s = carrier_midpoint(M, carriers);
  ComplexSequence taps(f.taps.size());
  for (std::size_t n = 0; n < f.taps.size(); ++n) {
    taps[n] = f.taps[n] * std::polar(1.0, 2.0 * kPi * s * static_cast<double>(n) / M);
  }
  return taps;
}

ComplexSequence apply_filter(std::span<const cplx> x, std::span<const cplx> taps) {
  if (x.empty() || taps.empty()) return {};
  ComplexSequence y(x.size() + taps.size() - 1, cplx{0.0, 0.0});
  for (std::size_t m = 0; m < taps.size(); ++m) {
    for (std::size_t n = 0; n < x.size(); ++n) y[n + m] += taps[m] * x[n];
  }
  return y;
}

ComplexSequence apply_filter(std::span<const cplx> x, const FirFilter& f) {
  const ComplexSequence taps(f.taps.begin(), f.taps.end());
  return apply_filter(x, taps);
}

ComplexSequence zero_pad_tx(std::span<const cplx> y, int D) {
  if (D < 0) throw ParameterError("zero padding D must be nonnegative");
  ComplexSequence out(y.begin(), y.end());
  out.resize(y.size() + static_cast<std::size_t>(D), cplx{0.0, 0.0});
  return out;
}

ComplexSequence channel_apply(std::span<const cplx> tx, const ChannelRealization& channel, int D, RngStream& rng) {
  if (channel.length() - 1 > D) {
    throw ConfigurationError("channel length L = " + std::to_string(channel.length()) +
                             " violates L - 1 <= D = " + std::to_string(D) + "; blocks would interfere");
  }
  ComplexSequence r(tx.size(), cplx{0.0, 0.0});
  for (std::size_t n = 0; n < tx.size(); ++n) {
    cplx acc = 0.0;
    for (std::size_t l = 0; l < channel.taps.size() && l <= n; ++l) acc += channel.taps[l] * tx[n - l];
    r[n] = acc;
  }
  if (channel.sigma_n > 0.0) {
    const double var = channel.sigma_n * channel.sigma_n;
    for (cplx& v : r) v += complex_normal(rng, var);
  }
  return r;
}

ChannelRealization draw_channel(int L, RngStream& rng, FadingTaps kind) {
  if (L < 1) throw ParameterError("channel needs at least one tap");
  ChannelRealization ch;
  ch.taps.resize(static_cast<std::size_t>(L));
  const double var = 1.0 / L;
  for (cplx& h : ch.taps) {
    h = kind == FadingTaps::complex_gaussian ? complex_normal(rng, var) : cplx{std::sqrt(var) * standard_normal(rng), 0.0};
  }
  return ch;
}

ComplexSequence channel_response(const ChannelRealization& channel, int M, std::span<const int> carriers) {
  ComplexSequence out(carriers.size());
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    out[i] = response_at(channel.taps, 2.0 * kPi * carriers[i] / M);
  }
  return out;
}

SymbolFrame receive_equalize(std::span<const cplx> r, const ChainConfig& cfg, const ChannelRealization& channel) {
  return Transceiver(cfg).receive(r, channel);
}

Transceiver::Transceiver(ChainConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  taps_ = band_shifted_taps(cfg_.filter, cfg_.M, cfg_.carriers);
  filter_response_.resize(cfg_.carriers.size());
  for (std::size_t i = 0; i < cfg_.carriers.size(); ++i) {
    filter_response_[i] = response_at(taps_, 2.0 * kPi * cfg_.carriers[i] / cfg_.M);
  }
}

ComplexSequence Transceiver::filtered_symbol(const SymbolFrame& frame) const {
  return apply_filter(ofdm_modulate(frame, cfg_.M), taps_);
}

ComplexSequence Transceiver::transmit(const SymbolFrame& frame) const {
  return zero_pad_tx(filtered_symbol(frame), cfg_.D);
}

bool Transceiver::equalizable(const ChannelRealization& channel) const {
  const ComplexSequence H = channel_response(channel, cfg_.M, cfg_.carriers);
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (std::abs(filter_response_[i] * H[i]) < kNullThreshold) return false;
  }
  return true;
}

SymbolFrame Transceiver::receive(std::span<const cplx> r, const ChannelRealization& channel) const {
  const std::size_t size = 2 * static_cast<std::size_t>(cfg_.M);
  if (r.size() > size) throw ParameterError("received block longer than 2M");
  const ComplexSequence R = dft(r, size);
  const ComplexSequence H = channel_response(channel, cfg_.M, cfg_.carriers);
  const double root_m = std::sqrt(static_cast<double>(cfg_.M));
  SymbolFrame out;
  out.carriers = cfg_.carriers;
  out.symbols.resize(cfg_.carriers.size());
  for (std::size_t i = 0; i < cfg_.carriers.size(); ++i) {
    const cplx gain = filter_response_[i] * H[i];
    if (std::abs(gain) < kNullThreshold) {
      throw SpectralNullError("|F H| vanishes at carrier " + std::to_string(cfg_.carriers[i]));
    }
    out.symbols[i] = R[2 * static_cast<std::size_t>(cfg_.carriers[i])] / (root_m * gain);
  }
  return out;
}

}  // namespace ufofdm
