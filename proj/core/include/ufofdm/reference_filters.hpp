#pragma once

#include "ufofdm/design_problem.hpp"
#include "ufofdm/spectral_factorization.hpp"

namespace ufofdm {

/// Dolph-Chebyshev window of `N` taps whose side lobes all sit
/// `attenuation_db` below the main-lobe peak. Symmetric, peak tap 1.
/// Throws ParameterError for N < 2 or a nonpositive attenuation.
FirFilter dolph_chebyshev(int N, double attenuation_db);

/// f = [1]; reduces the UF-OFDM chain to plain OFDM.
FirFilter identity_filter();

/// Scales `f` so that b_c' autocorrelation(f) = K(M+N-1) for the band of
/// `spec` (N is taken from the filter).
FirFilter normalize_power(const FirFilter& f, const DesignSpec& spec);

}  // namespace ufofdm
