#include "ufofdm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

void check_transform_args(std::span<const cplx> x, std::size_t size) {
  if (!is_power_of_two(size)) {
    throw ParameterError("transform size " + std::to_string(size) + " is not a power of two");
  }
  if (x.size() > size) {
    throw ParameterError("transform input longer than transform size");
  }
  for (const cplx& v : x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ParameterError("transform input contains non-finite samples");
    }
  }
}

// In-place iterative radix-2 transform; sign = -1 forward, +1 inverse (unnormalized).
void radix2(ComplexSequence& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Twiddles are evaluated directly rather than by recurrence to keep the
  // per-bin error at a few ulps for the sizes used here.
  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[start + k];
        const cplx v = a[start + k + half] * twiddle[k * stride];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// p(z) and p'(z) in one pass.
void horner_with_derivative(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = 0.0;
  dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

ComplexSequence dft(std::span<const cplx> x, std::size_t size) {
  check_transform_args(x, size);
  ComplexSequence out(size, cplx{0.0, 0.0});
  std::copy(x.begin(), x.end(), out.begin());
  radix2(out, -1);
  return out;
}

ComplexSequence idft(std::span<const cplx> X, std::size_t size) {
  check_transform_args(X, size);
  ComplexSequence out(size, cplx{0.0, 0.0});
  std::copy(X.begin(), X.end(), out.begin());
  radix2(out, +1);
  const double scale = 1.0 / static_cast<double>(size);
  for (cplx& v : out) v *= scale;
  return out;
}

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == cplx{0.0, 0.0}) coeffs_.pop_back();
}

Polynomial Polynomial::from_real(std::span<const double> coeffs) {
  return Polynomial(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

cplx Polynomial::operator()(cplx z) const { return horner(coeffs_, z); }

std::vector<cplx> poly_roots(const Polynomial& p, const RootFinderOptions& options) {
  if (p.is_zero()) throw ParameterError("poly_roots: zero polynomial");
  if (p.degree() < 1) throw ParameterError("poly_roots: polynomial has degree < 1");

  std::vector<cplx> roots;
  std::vector<cplx> c = p.coeffs();

  // Exact zero roots come off the bottom directly.
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx{0.0, 0.0}) ++zeros;
  roots.assign(zeros, cplx{0.0, 0.0});
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));

  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return roots;

  const cplx lead = c.back();
  for (cplx& v : c) v /= lead;

  if (n == 1) {
    roots.push_back(-c[0]);
    return roots;
  }

  // Start on a circle whose radius is the geometric mean of the root moduli,
  // rotated off the real axis so conjugate pairs are not seeded symmetrically.
  const double radius = std::pow(std::abs(c[0]), 1.0 / n);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * kPi * k / n + 0.4);
  }

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double max_update = 0.0;
    for (int k = 0; k < n; ++k) {
      cplx& zk = z[static_cast<std::size_t>(k)];
      cplx pv, dpv;
      horner_with_derivative(c, zk, pv, dpv);
      if (pv == cplx{0.0, 0.0}) continue;
      const cplx ratio = pv / dpv;
      cplx repulsion = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const cplx diff = zk - z[static_cast<std::size_t>(j)];
        if (diff != cplx{0.0, 0.0}) repulsion += 1.0 / diff;
      }
      cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      zk -= step;
      max_update = std::max(max_update, std::abs(step) / (1.0 + std::abs(zk)));
    }
    if (max_update < options.tolerance) break;
  }

  // Newton polish, kept only when it lowers the residual (multiple roots
  // make plain Newton steps unreliable).
  for (cplx& zk : z) {
    for (int it = 0; it < 3; ++it) {
      cplx pv, dpv;
      horner_with_derivative(c, zk, pv, dpv);
      if (pv == cplx{0.0, 0.0} || dpv == cplx{0.0, 0.0}) break;
      const cplx candidate = zk - pv / dpv;
      if (std::abs(horner(c, candidate)) < std::abs(pv)) {
        zk = candidate;
      } else {
        break;
      }
    }
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace ufofdm
