#include "ufofdm/reference_filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

// Chebyshev polynomial T_n(x) for any real x.
double chebyshev(int n, double x) {
  if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
  const double v = std::cosh(n * std::acosh(std::abs(x)));
  return (x < 0.0 && n % 2 == 1) ? -v : v;
}

}  // namespace

FirFilter dolph_chebyshev(int N, double attenuation_db) {
  if (N < 2) throw ParameterError("Dolph-Chebyshev filter needs N >= 2");
  if (!(attenuation_db > 0.0) || !std::isfinite(attenuation_db)) {
    throw ParameterError("Dolph-Chebyshev attenuation must be positive");
  }
  const int order = N - 1;
  const double ripple = std::pow(10.0, attenuation_db / 20.0);
  const double beta = std::cosh(std::acosh(ripple) / order);

  // Frequency samples W_k = T_{N-1}(beta cos(pi k / N)). For even N the
  // samples carry a half-bin linear phase so the inverse transform is real
  // and symmetric about (N-1)/2.
  std::vector<double> taps(static_cast<std::size_t>(N), 0.0);
  for (int n = 0; n < N; ++n) {
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
      const double w = chebyshev(order, beta * std::cos(kPi * k / N));
      // Centered sample index keeps the result symmetric for both parities.
      const double t = n - 0.5 * order;
      acc += w * std::cos(2.0 * kPi * k * t / N);
    }
    taps[static_cast<std::size_t>(n)] = acc;
  }
  // Symmetrize against rounding, then normalize the peak tap.
  for (int n = 0; n < N / 2; ++n) {
    const double avg = 0.5 * (taps[static_cast<std::size_t>(n)] + taps[static_cast<std::size_t>(N - 1 - n)]);
    taps[static_cast<std::size_t>(n)] = avg;
    taps[static_cast<std::size_t>(N - 1 - n)] = avg;
  }
  const double peak = *std::max_element(taps.begin(), taps.end());
  for (double& v : taps) v /= peak;

  FirFilter f;
  f.taps = std::move(taps);
  f.provenance = provenance::DolphChebyshev{attenuation_db};
  return f;
}

FirFilter identity_filter() {
  FirFilter f;
  f.taps = {1.0};
  f.provenance = provenance::Identity{};
  return f;
}

FirFilter normalize_power(const FirFilter& f, const DesignSpec& spec) {
  DesignSpec s = spec;
  s.N = f.length();
  const std::vector<double> b = power_vector(s, shift_carriers(s));
  const Autocorrelation g = autocorrelation(f);
  const double power = std::inner_product(b.begin(), b.end(), g.g.begin(), 0.0);
  if (!(power > 0.0)) throw ParameterError("filter carries no power in the band");
  const double k = std::sqrt(s.power_target() / power);
  FirFilter out = f;
  for (double& v : out.taps) v *= k;
  return out;
}

}  // namespace ufofdm
