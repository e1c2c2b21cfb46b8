#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ufofdm/chain.hpp"
#include "ufofdm/design_problem.hpp"
#include "ufofdm/spectral_factorization.hpp"

namespace ufofdm {

// ---------------------------------------------------------------------------
// Power spectral density

/// |F(w)|^2 E{|X(w)|^2} on [0, pi] in the band-centered frame, in dB
/// relative to the analytic peak. empirical_db is empty unless estimated.
struct PsdTrace {
  std::vector<double> omega;
  std::vector<double> analytic_db;
  std::vector<double> empirical_db;

  /// Largest analytic value at or above `omega_start`.
  double stopband_max_db(double omega_start) const;
};

/// Throws ParameterError for fewer than 256 grid points.
PsdTrace analytic_psd(const FirFilter& filter, const DesignSpec& spec, int grid_points);

/// Averaged periodogram of `frames` filtered random-QPSK symbols on the
/// fft_size/2 + 1 bins of [0, pi], with the analytic trace on the same bins.
/// Both columns share the analytic peak as 0 dB. fft_size must be a power
/// of two and at least 4M.
PsdTrace empirical_psd(const FirFilter& filter, const DesignSpec& spec, int frames, int fft_size,
                       std::uint64_t master_seed, int threads = 1);

// ---------------------------------------------------------------------------
// Closed-form statistics

/// Per-carrier post-equalization SNR sqrt(M/(M+N+D-1)) |F H| / sigma_n.
std::vector<double> snr_theoretical(const Transceiver& chain, const ChannelRealization& channel);

/// Highest side lobe of |F(w)|^2 in dB relative to its peak, taken over
/// [first minimum right of the peak, pi] on a `points` grid of [0, pi].
double sidelobe_level_db(const FirFilter& filter, int points = kVerificationGridPoints);

/// sigma~ = sqrt(mean over used carriers of |F(2 pi k / M)|^2).
double sigma_tilde(const FirFilter& filter, const DesignSpec& spec);

// ---------------------------------------------------------------------------
// Bit error rate

enum class ChannelModel { awgn_flat, rayleigh };

std::string to_string(ChannelModel model);

struct BerOptions {
  ChannelModel model = ChannelModel::rayleigh;
  int L = 12;
  FadingTaps taps = FadingTaps::complex_gaussian;
  /// SNR axis as sigma_s^2 / sigma_n^2 in dB with sigma_s^2 = 1/2, the
  /// energy per bit before filtering. +inf runs noiseless.
  std::vector<double> snr_db;
  std::uint64_t bits_per_point = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct BerPoint {
  double snr_db = 0.0;
  /// Energy per transmitted bit over N0: snr_db + 10 log10((M+N-1)/M).
  double eb_n0_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  double ber = 0.0;
  double ci_low = 0.0;   ///< 95% Wilson interval
  double ci_high = 0.0;
  std::uint64_t channel_redraws = 0;
};

struct BerCurve {
  std::vector<BerPoint> points;
  ChannelModel model = ChannelModel::rayleigh;
  int L = 1;
  std::uint64_t seed = 0;
};

/// Noise standard deviation per complex sample for an SNR point.
double sigma_n_for_snr_db(double snr_db);

/// Runs ceil(bits/2K) frames per SNR point through the full chain. Frame i
/// of point p draws everything from stream (seed, p, i), so curves for
/// different filters with the same seed see identical bits, channels and
/// noise. Rayleigh channels with a spectral null at a used carrier are
/// redrawn; 10^4 consecutive redraws raise ExperimentError.
BerCurve run_ber_experiment(const ChainConfig& cfg, const BerOptions& options);

/// 95% Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

// ---------------------------------------------------------------------------
// PAPR

struct PaprOptions {
  int symbols = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  /// 1: the M+N-1 filtered samples as they are. 4: band-limited 4x
  /// interpolation through a zero-padded transform.
  int interpolation = 1;
  double threshold_max_db = 16.0;
  double threshold_step_db = 0.05;
};

struct PaprCcdf {
  std::vector<double> thresholds_db;
  std::vector<double> ccdf;            ///< P(PAPR > threshold)
  std::vector<double> sorted_papr_db;  ///< per-symbol PAPR, ascending
  int symbols_evaluated = 0;
  int oversampling = 0;                ///< samples per symbol duration / K
  double sigma_tilde = 0.0;

  /// Empirical (1 - probability) quantile of the PAPR in dB.
  double threshold_at(double probability) const;
};

/// PAPR = max |y_n|^2 / (K/M) per symbol, no zero padding. With the
/// identity filter this is plain OFDM over its M IFFT samples.
PaprCcdf compute_papr_ccdf(const FirFilter& filter, const DesignSpec& spec, const PaprOptions& options);

// ---------------------------------------------------------------------------
// CSV output; headers always present, numbers in %.17g.

void write_ber_csv(std::ostream& out, const BerCurve& curve);
void write_ccdf_csv(std::ostream& out, const PaprCcdf& ccdf);
void write_psd_csv(std::ostream& out, const PsdTrace& psd);

}  // namespace ufofdm
