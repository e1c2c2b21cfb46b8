#include "ufofdm/random.hpp"

#include <cmath>
#include <numbers>

namespace ufofdm {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t experiment_id, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master_seed) ^ experiment_id) ^ index);
}

RngStream make_stream(std::uint64_t master_seed, std::uint64_t experiment_id, std::uint64_t index) {
  return RngStream(derive_seed(master_seed, experiment_id, index));
}

double uniform_open(RngStream& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double standard_normal(RngStream& rng) {
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> complex_normal(RngStream& rng, double variance) {
  // One Box-Muller draw yields both quadratures.
  const double u1 = uniform_open(rng);
  const double u2 = uniform_open(rng);
  const double r = std::sqrt(-variance * std::log(u1));
  return std::polar(r, 2.0 * std::numbers::pi * u2);
}

}  // namespace ufofdm
