#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ufofdm/design_problem.hpp"

namespace ufofdm {

namespace provenance {
struct Designed {
  double lambda = 0.0;
};
struct DolphChebyshev {
  double attenuation_db = 0.0;
};
struct Identity {};
struct External {};
}  // namespace provenance

using Provenance =
    std::variant<provenance::Designed, provenance::DolphChebyshev, provenance::Identity, provenance::External>;

std::string provenance_name(const Provenance& p);

/// Real FIR filter f_0..f_{N-1}.
struct FirFilter {
  std::vector<double> taps;
  Provenance provenance = provenance::External{};

  int length() const { return static_cast<int>(taps.size()); }
  /// Throws ParameterError unless taps are finite, f_0 > 0 and f_{N-1} != 0.
  void validate() const;
};

/// Symmetric autocorrelation sequence stored as g_0..g_{N-1}; g_{-n} = g_n.
struct Autocorrelation {
  std::vector<double> g;

  int length() const { return static_cast<int>(g.size()); }
  /// F_g(w) = |F(w)|^2 for the underlying filter.
  double spectrum(double omega) const { return autocorrelation_spectrum(g, omega); }
};

/// Number of points of the dense [0, pi] grid used to verify spectra.
inline constexpr int kVerificationGridPoints = 1 << 14;

Autocorrelation autocorrelation(std::span<const double> f);
Autocorrelation autocorrelation(const FirFilter& f);

/// Minimum of F_g over `points` uniform samples of [0, pi].
double min_spectrum_on_grid(const Autocorrelation& g, int points = kVerificationGridPoints);

struct FactorizationInfo {
  int unit_circle_roots = 0;    ///< roots treated as on-circle double roots
  int newton_iterations = 0;    ///< accepted refinement steps
  double residual = 0.0;        ///< max |autocorrelation(f) - g|
  std::vector<std::string> warnings;
};

/// Minimum-phase spectral factor of `g` by root pairing of the
/// degree-(2N-2) Laurent polynomial, refined with Newton steps on the
/// autocorrelation equations.
///
/// Throws FactorizationError when F_g dips below -tol*g_0 on the
/// verification grid, when the roots do not pair up reciprocally, or when
/// the reconstruction misses g by more than 1e-8*g_0.
FirFilter factorize(const Autocorrelation& g, double tol = 1e-9, FactorizationInfo* info = nullptr,
                    Provenance provenance = provenance::External{});

/// Lifts g_0 so F_g is nonnegative on the verification grid, then rescales
/// so that b_c' g = K(M+N-1) again. Returns g unchanged when F_g >= 0.
Autocorrelation repair_nonnegativity(const Autocorrelation& g, const DesignSpec& spec);

}  // namespace ufofdm
