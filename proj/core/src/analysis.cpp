#include "ufofdm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ufofdm/errors.hpp"
#include "ufofdm/parallel.hpp"

namespace ufofdm {
namespace {

// Stream namespaces for the experiments sharing a master seed.
constexpr std::uint64_t kPsdExperiment = 0x707364;       // "psd"
constexpr std::uint64_t kPaprExperiment = 0x70617072;    // "papr"
constexpr std::uint64_t kBerExperimentBase = 0x62657200; // "ber" + point index

constexpr std::size_t kFramesPerBlock = 256;

Bits random_bits(RngStream& rng, std::size_t count) {
  Bits bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  return bits;
}

SymbolFrame random_frame(RngStream& rng, std::span<const int> carriers) {
  return qpsk_modulate(random_bits(rng, 2 * carriers.size()), carriers);
}

double to_db(double value, double reference) {
  return 10.0 * std::log10(std::max(value, reference * 1e-30) / reference);
}

ComplexSequence interpolate(std::span<const cplx> y, int factor) {
  std::size_t P = 1;
  while (P < y.size()) P <<= 1;
  const ComplexSequence Y = dft(y, P);
  const std::size_t big = P * static_cast<std::size_t>(factor);
  ComplexSequence Z(big, cplx{0.0, 0.0});
  for (std::size_t m = 0; m < P; ++m) {
    if (m < P / 2) {
      Z[m] = Y[m];
    } else {
      Z[big - (P - m)] = Y[m];
    }
  }
  ComplexSequence z = idft(Z, big);
  z.resize(y.size() * static_cast<std::size_t>(factor));
  for (cplx& v : z) v *= static_cast<double>(factor);
  return z;
}

}  // namespace

double PsdTrace::stopband_max_db(double omega_start) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i] >= omega_start) best = std::max(best, analytic_db[i]);
  }
  return best;
}

PsdTrace analytic_psd(const FirFilter& filter, const DesignSpec& spec, int grid_points) {
  if (grid_points < 256) throw ParameterError("analytic PSD needs at least 256 grid points");
  const CarrierFrequencies carriers = shift_carriers(spec);
  const Autocorrelation g = autocorrelation(filter);
  PsdTrace trace;
  trace.omega = uniform_grid(0.0, kPi, grid_points);
  std::vector<double> linear(trace.omega.size());
  for (std::size_t i = 0; i < linear.size(); ++i) {
    linear[i] = g.spectrum(trace.omega[i]) * expected_spectrum(spec.M, carriers, trace.omega[i]);
  }
  const double peak = *std::max_element(linear.begin(), linear.end());
  trace.analytic_db.resize(linear.size());
  std::transform(linear.begin(), linear.end(), trace.analytic_db.begin(), [&](double v) { return to_db(v, peak); });
  return trace;
}

PsdTrace empirical_psd(const FirFilter& filter, const DesignSpec& spec, int frames, int fft_size,
                       std::uint64_t master_seed, int threads) {
  if (frames < 1) throw ParameterError("empirical PSD needs at least one frame");
  if (!is_power_of_two(static_cast<std::size_t>(fft_size)) || fft_size < 4 * spec.M) {
    throw ParameterError("empirical PSD transform size must be a power of two >= 4M");
  }
  const ChainConfig cfg{spec.M, 0, spec.carriers, filter};
  const Transceiver chain(cfg);
  const double shift = 2.0 * kPi * carrier_midpoint(spec.M, spec.carriers) / spec.M;
  const std::size_t half = static_cast<std::size_t>(fft_size) / 2 + 1;

  const std::size_t n_frames = static_cast<std::size_t>(frames);
  const std::size_t blocks = (n_frames + kFramesPerBlock - 1) / kFramesPerBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(half, 0.0));
  for_each_block(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(n_frames, (b + 1) * kFramesPerBlock);
    for (std::size_t i = b * kFramesPerBlock; i < end; ++i) {
      RngStream rng = make_stream(master_seed, kPsdExperiment, i);
      ComplexSequence y = chain.filtered_symbol(random_frame(rng, cfg.carriers));
      // Demodulate the band center to w = 0 so bins map onto the design frame.
      for (std::size_t n = 0; n < y.size(); ++n) y[n] *= std::polar(1.0, -shift * static_cast<double>(n));
      const ComplexSequence Y = dft(y, static_cast<std::size_t>(fft_size));
      for (std::size_t m = 0; m < half; ++m) {
        const std::size_t mirror = (static_cast<std::size_t>(fft_size) - m) % static_cast<std::size_t>(fft_size);
        partial[b][m] += 0.5 * (std::norm(Y[m]) + std::norm(Y[mirror]));
      }
    }
  });
  std::vector<double> power(half, 0.0);
  for (const auto& p : partial) {
    for (std::size_t m = 0; m < half; ++m) power[m] += p[m];
  }

  const CarrierFrequencies carriers = shift_carriers(spec);
  const Autocorrelation g = autocorrelation(filter);
  PsdTrace trace;
  trace.omega.resize(half);
  std::vector<double> linear(half);
  for (std::size_t m = 0; m < half; ++m) {
    trace.omega[m] = 2.0 * kPi * static_cast<double>(m) / fft_size;
    linear[m] = g.spectrum(trace.omega[m]) * expected_spectrum(spec.M, carriers, trace.omega[m]);
  }
  const double peak = *std::max_element(linear.begin(), linear.end());
  trace.analytic_db.resize(half);
  trace.empirical_db.resize(half);
  for (std::size_t m = 0; m < half; ++m) {
    trace.analytic_db[m] = to_db(linear[m], peak);
    trace.empirical_db[m] = to_db(power[m] / static_cast<double>(frames), peak);
  }
  return trace;
}

double sidelobe_level_db(const FirFilter& filter, int points) {
  if (points < 16) throw ParameterError("side-lobe search needs at least 16 grid points");
  const Autocorrelation g = autocorrelation(filter);
  const std::vector<double> omega = uniform_grid(0.0, kPi, points);
  std::vector<double> power(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) power[i] = g.spectrum(omega[i]);
  const auto peak_it = std::max_element(power.begin(), power.end());
  const double peak = *peak_it;
  std::size_t i = static_cast<std::size_t>(peak_it - power.begin());
  while (i + 1 < power.size() && power[i + 1] <= power[i]) ++i;
  if (i + 1 >= power.size()) return -std::numeric_limits<double>::infinity();
  const double lobe = *std::max_element(power.begin() + static_cast<std::ptrdiff_t>(i), power.end());
  return to_db(lobe, peak);
}

std::vector<double> snr_theoretical(const Transceiver& chain, const ChannelRealization& channel) {
  if (!(channel.sigma_n > 0.0)) throw ParameterError("SNR needs sigma_n > 0");
  const ChainConfig& cfg = chain.config();
  const ComplexSequence H = channel_response(channel, cfg.M, cfg.carriers);
  const double prefactor = std::sqrt(static_cast<double>(cfg.M) / cfg.transmit_length());
  std::vector<double> snr(H.size());
  for (std::size_t i = 0; i < H.size(); ++i) {
    snr[i] = prefactor * std::abs(chain.filter_response()[i] * H[i]) / channel.sigma_n;
  }
  return snr;
}

double sigma_tilde(const FirFilter& filter, const DesignSpec& spec) {
  const Autocorrelation g = autocorrelation(filter);
  const std::vector<double> band = shift_carriers(spec).full();
  double acc = 0.0;
  for (double w : band) acc += g.spectrum(w);
  return std::sqrt(std::max(acc, 0.0) / static_cast<double>(band.size()));
}

std::string to_string(ChannelModel model) { return model == ChannelModel::awgn_flat ? "awgn" : "rayleigh"; }

double sigma_n_for_snr_db(double snr_db) { return std::sqrt(0.5 / std::pow(10.0, snr_db / 10.0)); }

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

BerCurve run_ber_experiment(const ChainConfig& cfg, const BerOptions& options) {
  if (options.bits_per_point < 10000) throw ParameterError("BER experiment needs at least 1e4 bits per point");
  const int L = options.model == ChannelModel::awgn_flat ? 1 : options.L;
  if (L < 1) throw ParameterError("channel needs at least one tap");
  if (L - 1 > cfg.D) {
    throw ConfigurationError("channel length L = " + std::to_string(L) + " breaks the no-intersymbol-interference "
                             "assumption L - 1 <= D = " + std::to_string(cfg.D));
  }
  const Transceiver chain(cfg);
  const std::size_t bits_per_frame = 2 * cfg.carriers.size();
  const std::uint64_t frames = (options.bits_per_point + bits_per_frame - 1) / bits_per_frame;
  const std::size_t blocks = static_cast<std::size_t>((frames + kFramesPerBlock - 1) / kFramesPerBlock);

  BerCurve curve;
  curve.model = options.model;
  curve.L = L;
  curve.seed = options.seed;

  for (std::size_t p = 0; p < options.snr_db.size(); ++p) {
    const double snr_db = options.snr_db[p];
    const double sigma_n = sigma_n_for_snr_db(snr_db);
    std::vector<std::uint64_t> errors(blocks, 0);
    std::vector<std::uint64_t> redraws(blocks, 0);

    for_each_block(blocks, options.threads, [&](std::size_t b) {
      const std::uint64_t end = std::min<std::uint64_t>(frames, (b + 1) * kFramesPerBlock);
      for (std::uint64_t i = b * kFramesPerBlock; i < end; ++i) {
        RngStream rng = make_stream(options.seed, kBerExperimentBase + p, i);
        const Bits bits = random_bits(rng, bits_per_frame);
        const ComplexSequence tx = chain.transmit(qpsk_modulate(bits, cfg.carriers));

        ChannelRealization channel;
        if (options.model == ChannelModel::awgn_flat) {
          channel.taps = {cplx{1.0, 0.0}};
        } else {
          int attempts = 0;
          for (;;) {
            channel = draw_channel(L, rng, options.taps);
            if (chain.equalizable(channel)) break;
            ++redraws[b];
            if (++attempts >= 10000) throw ExperimentError("10^4 consecutive channel draws had spectral nulls");
          }
        }
        channel.sigma_n = sigma_n;
        const ComplexSequence r = channel_apply(tx, channel, cfg.D, rng);
        const Bits decided = qpsk_demodulate(chain.receive(r, channel));
        for (std::size_t j = 0; j < bits.size(); ++j) errors[b] += bits[j] != decided[j];
      }
    });

    BerPoint point;
    point.snr_db = snr_db;
    point.eb_n0_db = snr_db + 10.0 * std::log10(static_cast<double>(cfg.M + cfg.N() - 1) / cfg.M);
    point.bits = frames * bits_per_frame;
    for (std::size_t b = 0; b < blocks; ++b) {
      point.errors += errors[b];
      point.channel_redraws += redraws[b];
    }
    point.ber = static_cast<double>(point.errors) / static_cast<double>(point.bits);
    std::tie(point.ci_low, point.ci_high) = wilson_interval(point.errors, point.bits);
    curve.points.push_back(point);
  }
  return curve;
}

double PaprCcdf::threshold_at(double probability) const {
  if (sorted_papr_db.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(sorted_papr_db.size());
  const double pos = std::ceil(n * (1.0 - probability)) - 1.0;
  const std::size_t idx = static_cast<std::size_t>(std::clamp(pos, 0.0, n - 1.0));
  return sorted_papr_db[idx];
}

PaprCcdf compute_papr_ccdf(const FirFilter& filter, const DesignSpec& spec, const PaprOptions& options) {
  if (options.symbols < 1) throw ParameterError("PAPR needs at least one symbol");
  if (options.interpolation != 1 && options.interpolation != 4) {
    throw ParameterError("PAPR interpolation factor must be 1 or 4");
  }
  if (!(options.threshold_step_db > 0.0)) throw ParameterError("PAPR threshold step must be positive");
  const ChainConfig cfg{spec.M, 0, spec.carriers, filter};
  const Transceiver chain(cfg);
  const double p_av = static_cast<double>(spec.K()) / spec.M;

  const std::size_t n = static_cast<std::size_t>(options.symbols);
  std::vector<double> papr(n);
  const std::size_t blocks = (n + kFramesPerBlock - 1) / kFramesPerBlock;
  for_each_block(blocks, options.threads, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kFramesPerBlock);
    for (std::size_t i = b * kFramesPerBlock; i < end; ++i) {
      RngStream rng = make_stream(options.seed, kPaprExperiment, i);
      ComplexSequence y = chain.filtered_symbol(random_frame(rng, cfg.carriers));
      if (options.interpolation > 1) y = interpolate(y, options.interpolation);
      double peak = 0.0;
      for (const cplx& v : y) peak = std::max(peak, std::norm(v));
      papr[i] = 10.0 * std::log10(peak / p_av);
    }
  });

  PaprCcdf out;
  out.sorted_papr_db = std::move(papr);
  std::sort(out.sorted_papr_db.begin(), out.sorted_papr_db.end());
  out.symbols_evaluated = options.symbols;
  out.oversampling = options.interpolation * spec.M / spec.K();
  out.sigma_tilde = sigma_tilde(filter, spec);
  const int steps = static_cast<int>(std::floor(options.threshold_max_db / options.threshold_step_db + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double t = i * options.threshold_step_db;
    const auto above = out.sorted_papr_db.end() - std::upper_bound(out.sorted_papr_db.begin(), out.sorted_papr_db.end(), t);
    out.thresholds_db.push_back(t);
    out.ccdf.push_back(static_cast<double>(above) / static_cast<double>(n));
  }
  return out;
}

}  // namespace ufofdm
