#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace ufofdm {

using cplx = std::complex<double>;
using ComplexSequence = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n);

/// Forward transform X_m = sum_n x_n exp(-2*pi*j*n*m/size).
///
/// `x` is implicitly zero padded to `size`. Throws ParameterError when
/// `size` is not a power of two, when x is longer than size, or when x
/// holds non-finite samples.
ComplexSequence dft(std::span<const cplx> x, std::size_t size);

/// Inverse of dft, including the 1/size normalization.
ComplexSequence idft(std::span<const cplx> X, std::size_t size);

/// Polynomial with complex coefficients in ascending degree order.
/// Trailing (highest-degree) exact zeros are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial from_real(std::span<const double> coeffs);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  cplx operator()(cplx z) const;

 private:
  std::vector<cplx> coeffs_;
};

struct RootFinderOptions {
  int max_iterations = 500;
  double tolerance = 1e-12;
};

/// All roots of `p`, with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration. Throws ParameterError for the zero polynomial or a constant.
std::vector<cplx> poly_roots(const Polynomial& p, const RootFinderOptions& options = {});

/// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x);

}  // namespace ufofdm
