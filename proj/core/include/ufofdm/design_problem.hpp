#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ufofdm/lp_solver.hpp"
#include "ufofdm/numerics.hpp"

namespace ufofdm {

/// Design-time parameters for one UF-OFDM sub-band filter.
struct DesignSpec {
  int M = 128;                 ///< IFFT size (samples per OFDM symbol)
  int N = 16;                  ///< filter length (taps)
  std::vector<int> carriers;   ///< used carrier indices J, K consecutive integers mod M
  double lambda = 1e-4;        ///< weight on the worst in-band gain
  double stopband_start = 17.0 * kPi / 64.0;
  int stopband_grid = 240;     ///< S, stopband samples
  int nonneg_grid = 256;       ///< G, nonnegativity samples on [0, pi]
  /// Accept a stopband that reaches into the carrier band instead of
  /// rejecting it. Grid points next to carriers are still dropped.
  bool allow_carrier_overlap = false;

  /// M=128, N=16, J={4..19}, S=15N, G=16N, stopband from 17pi/64.
  static DesignSpec defaults(double lambda = 1e-4);

  int K() const { return static_cast<int>(carriers.size()); }
  /// Right-hand side of the power conservation equality, K(M+N-1).
  double power_target() const;
  /// Throws ParameterError when an invariant is violated.
  void validate() const;
};

/// Carrier angular frequencies after shifting the band center to 0.
/// Only the nonnegative half is stored; the full set is symmetric.
struct CarrierFrequencies {
  std::vector<double> nonnegative_half;  ///< ascending

  std::vector<double> full() const;
};

/// First index of the consecutive run J = {first, first+1, ...} (mod M).
/// Throws ParameterError when `carriers` is not such a run.
int carrier_run_start(int M, std::span<const int> carriers);

/// Band center s = first + (K-1)/2; shifting k -> k - s centers the band.
double carrier_midpoint(int M, std::span<const int> carriers);

CarrierFrequencies shift_carriers(const DesignSpec& spec);
CarrierFrequencies shift_carriers(int M, std::span<const int> carriers);

/// Dirichlet kernel sin(M w / 2) / sin(w / 2), equal to M at multiples of 2pi.
double dirichlet_kernel(int M, double omega);

/// Expected periodogram E{|X(w)|^2} of the OFDM symbol for unit-energy
/// independent symbols on the shifted carriers.
double expected_spectrum(int M, const CarrierFrequencies& carriers, double omega);
double expected_spectrum(const DesignSpec& spec, const CarrierFrequencies& carriers, double omega);

/// Coefficients b_c with b_c' g equal to the mean output power times (M+N-1).
std::vector<double> power_vector(int M, int N, const CarrierFrequencies& carriers);
std::vector<double> power_vector(const DesignSpec& spec, const CarrierFrequencies& carriers);

/// F_g(w) = g_0 + 2 sum_{n>=1} g_n cos(n w).
double autocorrelation_spectrum(std::span<const double> g, double omega);

/// Uniform grid of `count` points on [lo, hi], endpoints included.
std::vector<double> uniform_grid(double lo, double hi, int count);

/// Stopband samples with points closer than 2pi/(8M) to a carrier removed.
/// Throws ConfigurationError when a carrier lies in the stopband and the
/// spec does not allow the overlap, or when no sample survives.
std::vector<double> stopband_grid(const DesignSpec& spec, const CarrierFrequencies& carriers);

/// Column layout of the design LP.
struct DesignLpLayout {
  int N = 0;
  int t1() const { return N; }
  int t2() const { return N + 1; }
  int num_variables() const { return N + 2; }
};

/// Discretized design problem over x = (g_0..g_{N-1}, t1, t2):
///   minimize t1 - lambda t2
///   F_g(w_i) E(w_i) <= t1   on the stopband grid
///   F_g(w_c) >= t2          at every nonnegative carrier frequency
///   b_c' g = K(M+N-1)
///   F_g(w_i) >= 0           on the nonnegativity grid
///   t1, t2 >= 0
/// Inequality rows appear in that order.
LinearProgram assemble_lp(const DesignSpec& spec, const CarrierFrequencies& carriers);

/// Parses an angle such as "0.83", "pi", "17pi/64", "17*pi/64" or "-pi/2".
double parse_angle(std::string_view text);
/// Inverse of parse_angle for multiples of pi/den with small den, else decimal.
std::string format_angle(double radians);

/// Reads `key = value` lines; '#' starts a comment. Keys: M, N, carriers
/// ("a:b" inclusive, wrapping mod M, or a comma list), lambda,
/// stopband_start, stopband_grid, nonneg_grid, allow_carrier_overlap.
/// Keys not present keep their value from `base`.
DesignSpec parse_design_config(std::string_view text, const DesignSpec& base = DesignSpec::defaults());
std::string format_design_config(const DesignSpec& spec);

/// Parses "a:b" (inclusive, wrapping mod M) or "a,b,c".
std::vector<int> parse_carriers(std::string_view text, int M);
std::string format_carriers(std::span<const int> carriers);

}  // namespace ufofdm
