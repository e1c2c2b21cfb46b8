#include "ufofdm/design_problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ufofdm/errors.hpp"

namespace ufofdm {
namespace {

// Wraps to (-pi, pi].
double wrap_angle(double omega) {
  double w = std::remainder(omega, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

DesignSpec DesignSpec::defaults(double lambda) {
  DesignSpec spec;
  spec.M = 128;
  spec.N = 16;
  spec.carriers.clear();
  for (int k = 4; k <= 19; ++k) spec.carriers.push_back(k);
  spec.lambda = lambda;
  spec.stopband_start = 17.0 * kPi / 64.0;
  spec.stopband_grid = 15 * spec.N;
  spec.nonneg_grid = 16 * spec.N;
  return spec;
}

double DesignSpec::power_target() const { return static_cast<double>(K()) * (M + N - 1); }

void DesignSpec::validate() const {
  if (M < 1) throw ParameterError("M must be positive");
  if (N < 1 || N > M) throw ParameterError("filter length N must satisfy 1 <= N <= M");
  if (carriers.empty()) throw ParameterError("carrier set is empty");
  for (int k : carriers) {
    if (k < 0 || k >= M) throw ParameterError("carrier index " + std::to_string(k) + " outside [0, M-1]");
  }
  carrier_run_start(M, carriers);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive");
  if (!(stopband_start > 0.0 && stopband_start < kPi)) throw ParameterError("stopband start must lie in (0, pi)");
  if (stopband_grid < N) throw ParameterError("stopband grid S must be at least N");
  if (nonneg_grid < N) throw ParameterError("nonnegativity grid G must be at least N");
}

std::vector<double> CarrierFrequencies::full() const {
  std::vector<double> out;
  out.reserve(2 * nonnegative_half.size());
  for (auto it = nonnegative_half.rbegin(); it != nonnegative_half.rend(); ++it) {
    if (*it != 0.0) out.push_back(-*it);
  }
  out.insert(out.end(), nonnegative_half.begin(), nonnegative_half.end());
  return out;
}

int carrier_run_start(int M, std::span<const int> carriers) {
  const int K = static_cast<int>(carriers.size());
  if (K == 0) throw ParameterError("carrier set is empty");
  if (K > M) throw ParameterError("more carriers than IFFT bins");
  std::vector<bool> used(static_cast<std::size_t>(M), false);
  for (int k : carriers) {
    if (k < 0 || k >= M) throw ParameterError("carrier index outside [0, M-1]");
    if (used[static_cast<std::size_t>(k)]) throw ParameterError("duplicate carrier index");
    used[static_cast<std::size_t>(k)] = true;
  }
  if (K == M) return 0;
  for (int start = 0; start < M; ++start) {
    const int prev = (start + M - 1) % M;
    if (!used[static_cast<std::size_t>(start)] || used[static_cast<std::size_t>(prev)]) continue;
    for (int i = 0; i < K; ++i) {
      if (!used[static_cast<std::size_t>((start + i) % M)]) {
        throw ParameterError("carriers are not consecutive integers modulo M");
      }
    }
    return start;
  }
  throw ParameterError("carriers are not consecutive integers modulo M");
}

double carrier_midpoint(int M, std::span<const int> carriers) {
  const int start = carrier_run_start(M, carriers);
  return start + 0.5 * (static_cast<double>(carriers.size()) - 1.0);
}

CarrierFrequencies shift_carriers(int M, std::span<const int> carriers) {
  const double s = carrier_midpoint(M, carriers);
  const int start = carrier_run_start(M, carriers);
  const int K = static_cast<int>(carriers.size());
  CarrierFrequencies out;
  for (int i = 0; i < K; ++i) {
    const double offset = (start + i) - s;  // symmetric: -(K-1)/2 .. (K-1)/2
    if (offset >= 0.0) out.nonnegative_half.push_back(2.0 * kPi * offset / M);
  }
  return out;
}

CarrierFrequencies shift_carriers(const DesignSpec& spec) { return shift_carriers(spec.M, spec.carriers); }

double dirichlet_kernel(int M, double omega) {
  const double w = wrap_angle(omega);
  if (std::abs(w) < 1e-9) return static_cast<double>(M);
  return std::sin(0.5 * M * w) / std::sin(0.5 * w);
}

double expected_spectrum(int M, const CarrierFrequencies& carriers, double omega) {
  double acc = 0.0;
  for (double wc : carriers.full()) {
    const double a = dirichlet_kernel(M, wc - omega);
    acc += a * a;
  }
  return acc / M;
}

double expected_spectrum(const DesignSpec& spec, const CarrierFrequencies& carriers, double omega) {
  return expected_spectrum(spec.M, carriers, omega);
}

std::vector<double> power_vector(int M, int N, const CarrierFrequencies& carriers) {
  if (N > M) throw ParameterError("power_vector: N > M");
  const std::vector<double> all = carriers.full();
  std::vector<double> b(static_cast<std::size_t>(N), 0.0);
  b[0] = static_cast<double>(all.size()) * M;
  for (int n = 1; n < N; ++n) {
    double acc = 0.0;
    for (double wc : all) acc += std::cos(n * wc);
    b[static_cast<std::size_t>(n)] = 2.0 * (M - n) * acc;
  }
  return b;
}

std::vector<double> power_vector(const DesignSpec& spec, const CarrierFrequencies& carriers) {
  return power_vector(spec.M, spec.N, carriers);
}

double autocorrelation_spectrum(std::span<const double> g, double omega) {
  if (g.empty()) return 0.0;
  // Clenshaw recurrence for sum_n a_n cos(n w) with a_0 = g_0, a_n = 2 g_n.
  const double x = std::cos(omega);
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t n = g.size() - 1; n >= 1; --n) {
    const double b0 = 2.0 * g[n] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return g[0] + x * b1 - b2;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<double> stopband_grid(const DesignSpec& spec, const CarrierFrequencies& carriers) {
  const double outermost = carriers.nonnegative_half.back();
  if (outermost >= spec.stopband_start && !spec.allow_carrier_overlap) {
    throw ConfigurationError("stopband starting at " + std::to_string(spec.stopband_start) +
                             " rad contains the carrier at " + std::to_string(outermost) +
                             " rad; the side-lobe and in-band constraints contradict each other");
  }
  const double guard = 2.0 * kPi / (8.0 * spec.M);
  std::vector<double> grid;
  for (double w : uniform_grid(spec.stopband_start, kPi, spec.stopband_grid)) {
    const bool near_carrier = std::any_of(carriers.nonnegative_half.begin(), carriers.nonnegative_half.end(),
                                          [&](double wc) { return std::abs(w - wc) < guard; });
    if (!near_carrier) grid.push_back(w);
  }
  if (grid.empty()) throw ConfigurationError("stopband grid is empty after excluding carrier neighbourhoods");
  return grid;
}

LinearProgram assemble_lp(const DesignSpec& spec, const CarrierFrequencies& carriers) {
  spec.validate();
  const DesignLpLayout layout{spec.N};
  const int n_var = layout.num_variables();
  const std::vector<double> stop = stopband_grid(spec, carriers);
  const std::vector<double> nonneg = uniform_grid(0.0, kPi, spec.nonneg_grid);
  const auto& band = carriers.nonnegative_half;

  const Eigen::Index rows = static_cast<Eigen::Index>(stop.size() + band.size() + nonneg.size());
  LinearProgram lp = LinearProgram::with_variables(n_var);
  lp.A_ub = Eigen::MatrixXd::Zero(rows, n_var);
  lp.b_ub = Eigen::VectorXd::Zero(rows);

  // Row of the linear map g -> F_g(w).
  auto spectrum_row = [&](double w, Eigen::Index row, double scale) {
    lp.A_ub(row, 0) = scale;
    for (int n = 1; n < spec.N; ++n) lp.A_ub(row, n) = scale * 2.0 * std::cos(n * w);
  };

  Eigen::Index row = 0;
  for (double w : stop) {
    spectrum_row(w, row, expected_spectrum(spec, carriers, w));
    lp.A_ub(row, layout.t1()) = -1.0;
    ++row;
  }
  for (double wc : band) {
    spectrum_row(wc, row, -1.0);
    lp.A_ub(row, layout.t2()) = 1.0;
    ++row;
  }
  for (double w : nonneg) {
    spectrum_row(w, row, -1.0);
    ++row;
  }

  const std::vector<double> b = power_vector(spec, carriers);
  lp.A_eq = Eigen::MatrixXd::Zero(1, n_var);
  for (int n = 0; n < spec.N; ++n) lp.A_eq(0, n) = b[static_cast<std::size_t>(n)];
  lp.b_eq = Eigen::VectorXd::Constant(1, spec.power_target());

  lp.c(layout.t1()) = 1.0;
  lp.c(layout.t2()) = -spec.lambda;
  lp.lower_bounds[static_cast<std::size_t>(layout.t1())] = 0.0;
  lp.lower_bounds[static_cast<std::size_t>(layout.t2())] = 0.0;
  return lp;
}

}  // namespace ufofdm
