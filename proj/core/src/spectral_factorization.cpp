#include "ufofdm/spectral_factorization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ufofdm/errors.hpp"
#include "ufofdm/numerics.hpp"

namespace ufofdm {
namespace {

constexpr double kUnitCircleBand = 1e-6;
constexpr double kPairingTolerance = 1e-6;

std::vector<double> expand_roots(const std::vector<cplx>& roots) {
  // Coefficients of prod (1 - r z^{-1}) in powers of z^{-1}.
  std::vector<cplx> poly{1.0};
  for (const cplx& r : roots) {
    poly.push_back(0.0);
    for (std::size_t i = poly.size() - 1; i >= 1; --i) poly[i] -= r * poly[i - 1];
  }
  std::vector<double> out(poly.size());
  std::transform(poly.begin(), poly.end(), out.begin(), [](cplx c) { return c.real(); });
  return out;
}

double max_residual(std::span<const double> f, const std::vector<double>& g) {
  const Autocorrelation a = autocorrelation(f);
  double r = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) r = std::max(r, std::abs(a.g[n] - g[n]));
  return r;
}

// Newton on autocorrelation(f) = g. Steps that do not shrink the residual
// are rejected, so this never makes the factor worse.
int refine(std::vector<double>& f, const std::vector<double>& g) {
  const int N = static_cast<int>(f.size());
  int accepted = 0;
  double res = max_residual(f, g);
  for (int iter = 0; iter < 20 && res > 0.0; ++iter) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd r(N);
    const Autocorrelation a = autocorrelation(f);
    for (int n = 0; n < N; ++n) {
      r(n) = g[static_cast<std::size_t>(n)] - a.g[static_cast<std::size_t>(n)];
      for (int k = 0; k < N; ++k) {
        double d = 0.0;
        if (n + k < N) d += f[static_cast<std::size_t>(n + k)];
        if (k - n >= 0) d += f[static_cast<std::size_t>(k - n)];
        J(n, k) = d;
      }
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) break;
    std::vector<double> trial = f;
    for (int k = 0; k < N; ++k) trial[static_cast<std::size_t>(k)] += step(k);
    const double trial_res = max_residual(trial, g);
    if (!(trial_res < res)) break;
    f = std::move(trial);
    res = trial_res;
    ++accepted;
  }
  return accepted;
}

}  // namespace

std::string provenance_name(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, provenance::Designed>) return "designed";
        if constexpr (std::is_same_v<T, provenance::DolphChebyshev>) return "dolph_chebyshev";
        if constexpr (std::is_same_v<T, provenance::Identity>) return "identity";
        return "external";
      },
      p);
}

void FirFilter::validate() const {
  if (taps.empty()) throw ParameterError("filter has no taps");
  for (double v : taps) {
    if (!std::isfinite(v)) throw ParameterError("filter tap is not finite");
  }
  if (!(taps.front() > 0.0)) throw ParameterError("filter must satisfy f_0 > 0");
  if (taps.back() == 0.0) throw ParameterError("filter must satisfy f_{N-1} != 0");
}

Autocorrelation autocorrelation(std::span<const double> f) {
  Autocorrelation a;
  a.g.assign(f.size(), 0.0);
  for (std::size_t n = 0; n < f.size(); ++n) {
    double acc = 0.0;
    for (std::size_t m = 0; m + n < f.size(); ++m) acc += f[m + n] * f[m];
    a.g[n] = acc;
  }
  return a;
}

Autocorrelation autocorrelation(const FirFilter& f) { return autocorrelation(f.taps); }

double min_spectrum_on_grid(const Autocorrelation& g, int points) {
  double lo = std::numeric_limits<double>::infinity();
  for (double w : uniform_grid(0.0, kPi, points)) lo = std::min(lo, g.spectrum(w));
  return lo;
}

FirFilter factorize(const Autocorrelation& g, double tol, FactorizationInfo* info, Provenance provenance) {
  FactorizationInfo local;
  FactorizationInfo& out = info ? *info : local;
  out = FactorizationInfo{};

  const int N = g.length();
  if (N == 0) throw FactorizationError("empty autocorrelation");
  const double g0 = g.g[0];
  if (!(g0 > 0.0)) throw FactorizationError("autocorrelation has g_0 <= 0");
  const double lo = min_spectrum_on_grid(g);
  if (lo < -tol * g0) {
    throw FactorizationError("spectrum F_g reaches " + std::to_string(lo) +
                             " on the verification grid; repair nonnegativity before factorizing");
  }

  FirFilter filter;
  filter.provenance = std::move(provenance);
  if (N == 1) {
    filter.taps = {std::sqrt(g0)};
    return filter;
  }

  // Highest significant lag; trailing zero lags shorten the polynomial.
  int L = N - 1;
  while (L > 0 && g.g[static_cast<std::size_t>(L)] == 0.0) --L;
  std::vector<cplx> kept;
  if (L > 0) {
    // z^L F_g(z): coefficients g_L .. g_1 g_0 g_1 .. g_L (palindromic).
    std::vector<double> coeffs(static_cast<std::size_t>(2 * L + 1));
    for (int n = -L; n <= L; ++n) coeffs[static_cast<std::size_t>(n + L)] = g.g[static_cast<std::size_t>(std::abs(n))];
    const std::vector<cplx> roots = poly_roots(Polynomial::from_real(coeffs));

    std::vector<cplx> inside, outside, circle;
    for (const cplx& r : roots) {
      const double mag = std::abs(r);
      if (std::abs(mag - 1.0) < kUnitCircleBand) {
        circle.push_back(r);
      } else if (mag < 1.0) {
        inside.push_back(r);
      } else {
        outside.push_back(r);
      }
    }
    if (inside.size() != outside.size() || circle.size() % 2 != 0) {
      throw FactorizationError("roots do not split into reciprocal pairs (" + std::to_string(inside.size()) +
                               " inside, " + std::to_string(outside.size()) + " outside, " +
                               std::to_string(circle.size()) + " on the unit circle)");
    }
    for (const cplx& r : inside) {
      const cplx mirror = 1.0 / std::conj(r);
      const auto best = std::min_element(outside.begin(), outside.end(), [&](const cplx& a, const cplx& b) {
        return std::abs(a - mirror) < std::abs(b - mirror);
      });
      if (std::abs(*best - mirror) > kPairingTolerance * std::max(1.0, std::abs(mirror))) {
        throw FactorizationError("root at radius " + std::to_string(std::abs(r)) + " has no reciprocal partner");
      }
      kept.push_back(r);
    }
    if (!circle.empty()) {
      // On-circle roots are double roots; order by angle and keep one of each
      // adjacent pair, projected onto the circle.
      // Angles just below -pi are moved past +pi so a double root at z = -1
      // is not split across the ends of the ordering.
      auto angle = [](const cplx& r) {
        const double a = std::arg(r);
        return a < -kPi + 1e-3 ? a + 2.0 * kPi : a;
      };
      std::sort(circle.begin(), circle.end(), [&](const cplx& a, const cplx& b) { return angle(a) < angle(b); });
      for (std::size_t i = 0; i + 1 < circle.size(); i += 2) {
        if (std::abs(angle(circle[i]) - angle(circle[i + 1])) > 1e-3) {
          throw FactorizationError("unit-circle roots are not paired as double roots");
        }
        const cplx mid = 0.5 * (circle[i] + circle[i + 1]);
        kept.push_back(mid / std::abs(mid));
      }
      out.unit_circle_roots = static_cast<int>(circle.size());
      out.warnings.push_back(std::to_string(circle.size()) +
                             " roots within 1e-6 of the unit circle were treated as double roots");
    }
  }

  std::vector<double> f = expand_roots(kept);
  f.resize(static_cast<std::size_t>(N), 0.0);
  const double energy = std::inner_product(f.begin(), f.end(), f.begin(), 0.0);
  const double gain = std::sqrt(g0 / energy);
  for (double& v : f) v *= gain;

  out.newton_iterations = refine(f, g.g);
  if (f.front() < 0.0) {
    for (double& v : f) v = -v;
  }
  out.residual = max_residual(f, g.g);
  if (!(out.residual <= 1e-8 * g0)) {
    throw FactorizationError("spectral factor reproduces g only to " + std::to_string(out.residual));
  }
  filter.taps = std::move(f);
  return filter;
}

Autocorrelation repair_nonnegativity(const Autocorrelation& g, const DesignSpec& spec) {
  const double lo = min_spectrum_on_grid(g);
  if (lo >= 0.0) return g;
  Autocorrelation out = g;
  out.g[0] += -lo * (1.0 + 1e-3);
  DesignSpec s = spec;
  s.N = out.length();
  const std::vector<double> b = power_vector(s, shift_carriers(s));
  const double power = std::inner_product(b.begin(), b.end(), out.g.begin(), 0.0);
  const double k = s.power_target() / power;
  for (double& v : out.g) v *= k;
  return out;
}

}  // namespace ufofdm
