#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ufofdm {

using RngStream = std::mt19937_64;

/// Seed for stream `index` of experiment `experiment_id`. The mixing is
/// fixed (SplitMix64 finalizer), so per-frame streams do not depend on how
/// frames are distributed over workers.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t experiment_id, std::uint64_t index);

RngStream make_stream(std::uint64_t master_seed, std::uint64_t experiment_id, std::uint64_t index);

/// Uniform on (0, 1], 53-bit resolution.
double uniform_open(RngStream& rng);

double standard_normal(RngStream& rng);

/// Circular complex Gaussian with E{|v|^2} = variance.
std::complex<double> complex_normal(RngStream& rng, double variance);

}  // namespace ufofdm
