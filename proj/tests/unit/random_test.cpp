#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ufofdm/numerics.hpp"
#include "ufofdm/random.hpp"

namespace {

TEST(DeriveSeed, DeterministicAndSpread) {
  EXPECT_EQ(ufofdm::derive_seed(1, 2, 3), ufofdm::derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t e = 0; e < 4; ++e) {
      for (std::uint64_t i = 0; i < 256; ++i) seen.insert(ufofdm::derive_seed(s, e, i));
    }
  }
  EXPECT_EQ(seen.size(), 4u * 4u * 256u);
  // Swapping the roles of the arguments gives a different stream.
  EXPECT_NE(ufofdm::derive_seed(1, 2, 3), ufofdm::derive_seed(3, 2, 1));
  EXPECT_NE(ufofdm::derive_seed(1, 2, 3), ufofdm::derive_seed(1, 3, 2));
}

TEST(MakeStream, ReproducibleSequences) {
  auto a = ufofdm::make_stream(7, 0, 5);
  auto b = ufofdm::make_stream(7, 0, 5);
  auto c = ufofdm::make_stream(7, 0, 6);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    differs = differs || va != c();
  }
  EXPECT_TRUE(differs);
}

TEST(UniformOpen, NeverZeroAndAtMostOne) {
  auto rng = ufofdm::make_stream(1, 1, 1);
  double mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = ufofdm::uniform_open(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    mean += u;
  }
  EXPECT_NEAR(mean / n, 0.5, 0.005);
}

TEST(StandardNormal, Moments) {
  auto rng = ufofdm::make_stream(2, 1, 1);
  const int n = 400000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    const double z = ufofdm::standard_normal(rng);
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
    tail += z > 1.0;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(s4 / n, 3.0, 0.05);
  EXPECT_NEAR(static_cast<double>(tail) / n, ufofdm::q_function(1.0), 0.003);
}

TEST(ComplexNormal, CircularWithRequestedVariance) {
  auto rng = ufofdm::make_stream(3, 1, 1);
  const int n = 400000;
  const double var = 2.5;
  double re2 = 0.0, im2 = 0.0, reim = 0.0;
  std::complex<double> mean{};
  for (int i = 0; i < n; ++i) {
    const auto v = ufofdm::complex_normal(rng, var);
    mean += v;
    re2 += v.real() * v.real();
    im2 += v.imag() * v.imag();
    reim += v.real() * v.imag();
  }
  EXPECT_LT(std::abs(mean) / n, 0.01);
  EXPECT_NEAR((re2 + im2) / n, var, 0.01 * var);
  EXPECT_NEAR(re2 / n, var / 2.0, 0.01 * var);
  EXPECT_NEAR(reim / n, 0.0, 0.01 * var);
}

TEST(ComplexNormal, ZeroVarianceIsZero) {
  auto rng = ufofdm::make_stream(4, 1, 1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(ufofdm::complex_normal(rng, 0.0), std::complex<double>(0.0, 0.0));
}

}  // namespace
