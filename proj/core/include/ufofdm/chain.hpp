#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ufofdm/numerics.hpp"
#include "ufofdm/random.hpp"
#include "ufofdm/spectral_factorization.hpp"

namespace ufofdm {

using Bits = std::vector<std::uint8_t>;

/// Symbol A_k on each used carrier; symbols[i] rides carriers[i].
struct SymbolFrame {
  std::vector<int> carriers;
  ComplexSequence symbols;
};

/// Multipath taps h_0..h_{L-1} plus AWGN with E{|v_n|^2} = sigma_n^2.
struct ChannelRealization {
  ComplexSequence taps;
  double sigma_n = 0.0;

  int length() const { return static_cast<int>(taps.size()); }
};

enum class FadingTaps { complex_gaussian, real_gaussian };

struct ChainConfig {
  int M = 128;
  int D = 16;
  std::vector<int> carriers;
  FirFilter filter;

  int N() const { return filter.length(); }
  int transmit_length() const { return M + N() + D - 1; }
  /// Throws ConfigurationError unless D >= 0 and M+N+D-1 <= 2M.
  void validate() const;
};

/// Gray mapping of bit pairs (b0, b1) to ((1-2 b0) + j (1-2 b1)) / sqrt(2).
/// Needs exactly two bits per carrier.
SymbolFrame qpsk_modulate(std::span<const std::uint8_t> bits, std::span<const int> carriers);

/// Sign decisions; a zero component decides bit 0.
Bits qpsk_demodulate(const SymbolFrame& frame);

/// x_n = sum_k A_k / sqrt(M) exp(2 pi j k n / M), n = 0..M-1.
ComplexSequence ofdm_modulate(const SymbolFrame& frame, int M);

/// Taps f_n exp(2 pi j s n / M) that move a filter designed around
/// w = 0 onto the carrier band with midpoint s.
ComplexSequence band_shifted_taps(const FirFilter& f, int M, std::span<const int> carriers);

/// Full linear convolution, length |x| + |taps| - 1.
ComplexSequence apply_filter(std::span<const cplx> x, std::span<const cplx> taps);
ComplexSequence apply_filter(std::span<const cplx> x, const FirFilter& f);

ComplexSequence zero_pad_tx(std::span<const cplx> y, int D);

/// r_n = sum_l h_l y~_{n-l} + v_n over the length of y~. Throws
/// ConfigurationError when L - 1 > D (the guard interval cannot absorb
/// the channel memory).
ComplexSequence channel_apply(std::span<const cplx> tx, const ChannelRealization& channel, int D, RngStream& rng);

/// L i.i.d. taps of variance 1/L each.
ChannelRealization draw_channel(int L, RngStream& rng, FadingTaps kind = FadingTaps::complex_gaussian);

/// H(2 pi k / M) for every used carrier.
ComplexSequence channel_response(const ChannelRealization& channel, int M, std::span<const int> carriers);

/// Zero-forcing receiver: zero pad r to 2M, take the 2M-point transform,
/// read bin 2k and divide by sqrt(M) F(2 pi k/M) H(2 pi k/M).
/// Throws SpectralNullError when |F H| < 1e-12 at a used carrier.
SymbolFrame receive_equalize(std::span<const cplx> r, const ChainConfig& cfg, const ChannelRealization& channel);

/// Precomputed transmitter and receiver for one ChainConfig.
class Transceiver {
 public:
  explicit Transceiver(ChainConfig cfg);

  const ChainConfig& config() const { return cfg_; }
  const ComplexSequence& shifted_taps() const { return taps_; }
  /// F(2 pi k / M) of the band-shifted filter at each used carrier.
  const ComplexSequence& filter_response() const { return filter_response_; }

  /// x -> filter -> zero padding.
  ComplexSequence transmit(const SymbolFrame& frame) const;
  /// x -> filter, without zero padding.
  ComplexSequence filtered_symbol(const SymbolFrame& frame) const;
  SymbolFrame receive(std::span<const cplx> r, const ChannelRealization& channel) const;
  /// True when |F H| >= 1e-12 on every used carrier.
  bool equalizable(const ChannelRealization& channel) const;

 private:
  ChainConfig cfg_;
  ComplexSequence taps_;
  ComplexSequence filter_response_;
};

}  // namespace ufofdm
