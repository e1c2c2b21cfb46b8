#include <gtest/gtest.h>

#include <cmath>

#include "ufofdm/design_problem.hpp"
#include "ufofdm/errors.hpp"

namespace {

using ufofdm::kPi;

TEST(ParseAngle, AcceptedForms) {
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle("0.83"), 0.83);
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle("17pi/64"), 17.0 * kPi / 64.0);
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle("17*pi/64"), 17.0 * kPi / 64.0);
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle(" 17 * PI / 64 "), 17.0 * kPi / 64.0);
  EXPECT_DOUBLE_EQ(ufofdm::parse_angle("-pi/2"), -kPi / 2.0);
}

TEST(ParseAngle, RejectsGarbage) {
  EXPECT_THROW(ufofdm::parse_angle("abc"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_angle("pi/0"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_angle("2pix"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_angle(""), ufofdm::ParameterError);
}

TEST(FormatAngle, RoundTripsDyadicMultiplesOfPi) {
  EXPECT_EQ(ufofdm::format_angle(17.0 * kPi / 64.0), "17pi/64");
  EXPECT_EQ(ufofdm::format_angle(kPi), "pi");
  EXPECT_EQ(ufofdm::format_angle(-kPi / 2.0), "-pi/2");
  for (double v : {17.0 * kPi / 64.0, 0.83, 1.0, 3.0 * kPi / 8.0}) {
    EXPECT_NEAR(ufofdm::parse_angle(ufofdm::format_angle(v)), v, 1e-15);
  }
}

TEST(ParseCarriers, RangesListsAndWrap) {
  EXPECT_EQ(ufofdm::parse_carriers("4:19", 128).size(), 16u);
  EXPECT_EQ(ufofdm::parse_carriers("4:19", 128).front(), 4);
  EXPECT_EQ(ufofdm::parse_carriers("6:1", 8), (std::vector<int>{6, 7, 0, 1}));
  EXPECT_EQ(ufofdm::parse_carriers("1, 2,3", 8), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(ufofdm::parse_carriers("4:200", 128), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_carriers("", 128), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_carriers("a,b", 128), ufofdm::ParameterError);
}

TEST(FormatCarriers, CompactsRuns) {
  const std::vector<int> run{4, 5, 6};
  const std::vector<int> wrap{6, 7, 0};
  EXPECT_EQ(ufofdm::format_carriers(run), "4:6");
  EXPECT_EQ(ufofdm::format_carriers(wrap), "6,7,0");
  EXPECT_EQ(ufofdm::parse_carriers(ufofdm::format_carriers(wrap), 8), wrap);
}

TEST(DesignConfig, RoundTrip) {
  auto spec = ufofdm::DesignSpec::defaults(1e-2);
  spec.N = 12;
  spec.stopband_grid = 180;
  spec.nonneg_grid = 192;
  const auto back = ufofdm::parse_design_config(ufofdm::format_design_config(spec));
  EXPECT_EQ(back.M, spec.M);
  EXPECT_EQ(back.N, spec.N);
  EXPECT_EQ(back.carriers, spec.carriers);
  EXPECT_EQ(back.lambda, spec.lambda);
  EXPECT_NEAR(back.stopband_start, spec.stopband_start, 1e-15);
  EXPECT_EQ(back.stopband_grid, spec.stopband_grid);
  EXPECT_EQ(back.nonneg_grid, spec.nonneg_grid);
  EXPECT_EQ(back.allow_carrier_overlap, spec.allow_carrier_overlap);
}

TEST(DesignConfig, GridsFollowFilterLengthUnlessGiven) {
  const auto a = ufofdm::parse_design_config("N = 10\n");
  EXPECT_EQ(a.stopband_grid, 150);
  EXPECT_EQ(a.nonneg_grid, 160);
  const auto b = ufofdm::parse_design_config("N = 10\nstopband_grid = 300 # explicit\n");
  EXPECT_EQ(b.stopband_grid, 300);
  EXPECT_EQ(b.nonneg_grid, 160);
}

TEST(DesignConfig, CommentsAndDefaults) {
  const auto s = ufofdm::parse_design_config("# only a comment\n\nlambda = 1 # trailing\n");
  EXPECT_EQ(s.lambda, 1.0);
  EXPECT_EQ(s.M, 128);
  EXPECT_EQ(s.N, 16);
}

TEST(DesignConfig, Errors) {
  EXPECT_THROW(ufofdm::parse_design_config("bogus = 3\n"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_design_config("N 16\n"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_design_config("N = sixteen\n"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_design_config("lambda = -1\n"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_design_config("allow_carrier_overlap = maybe\n"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::parse_design_config("carriers = 1,3\n"), ufofdm::ParameterError);
}

}  // namespace
