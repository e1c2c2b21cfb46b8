#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "ufofdm/errors.hpp"
#include "ufofdm/filter_io.hpp"
#include "ufofdm/pipeline.hpp"
#include "ufofdm/reference_filters.hpp"

namespace {

ufofdm::FilterDocument random_document(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ufofdm::FilterDocument doc;
  doc.M = 128;
  for (int k = 4; k <= 19; ++k) doc.carriers.push_back(k);
  doc.filter.taps.resize(16);
  for (auto& v : doc.filter.taps) v = normal(rng) / 3.0;
  doc.filter.taps[0] = std::abs(doc.filter.taps[0]) + 1e-3;
  doc.filter.provenance = ufofdm::provenance::Designed{1e-4};
  doc.g = ufofdm::autocorrelation(doc.filter);
  return doc;
}

TEST(FilterJson, RoundTripIsBitExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto doc = random_document(seed);
    const auto back = ufofdm::filter_from_json(ufofdm::to_json(doc));
    EXPECT_EQ(back.M, doc.M);
    EXPECT_EQ(back.carriers, doc.carriers);
    EXPECT_EQ(back.filter.taps, doc.filter.taps);
    EXPECT_EQ(back.g.g, doc.g.g);
    ASSERT_TRUE(std::holds_alternative<ufofdm::provenance::Designed>(back.filter.provenance));
    EXPECT_EQ(std::get<ufofdm::provenance::Designed>(back.filter.provenance).lambda, 1e-4);
  }
}

TEST(FilterJson, FieldsPresent) {
  const std::string text = ufofdm::to_json(random_document(3));
  for (const char* key : {"\"M\"", "\"N\"", "\"carriers\"", "\"lambda\"", "\"coefficients\"", "\"g\"",
                          "\"provenance\"", "\"created_by_version\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(text.find("attenuation_db"), std::string::npos);
}

TEST(FilterJson, ChebyshevKeepsAttenuation) {
  ufofdm::FilterDocument doc;
  doc.M = 128;
  doc.carriers = ufofdm::parse_carriers("4:19", 128);
  doc.filter = ufofdm::dolph_chebyshev(16, 45.0);
  doc.g = ufofdm::autocorrelation(doc.filter);
  const std::string text = ufofdm::to_json(doc);
  EXPECT_EQ(text.find("\"lambda\""), std::string::npos);
  const auto back = ufofdm::filter_from_json(text);
  ASSERT_TRUE(std::holds_alternative<ufofdm::provenance::DolphChebyshev>(back.filter.provenance));
  EXPECT_EQ(std::get<ufofdm::provenance::DolphChebyshev>(back.filter.provenance).attenuation_db, 45.0);
}

TEST(FilterJson, MissingAutocorrelationIsComputed) {
  const auto doc = ufofdm::filter_from_json(R"({"M": 8, "carriers": [0, 1], "coefficients": [2, 1]})");
  EXPECT_EQ(doc.g.g, (std::vector<double>{5.0, 2.0}));
  EXPECT_TRUE(std::holds_alternative<ufofdm::provenance::External>(doc.filter.provenance));
}

TEST(FilterJson, MalformedDocumentsAreRejected) {
  EXPECT_THROW(ufofdm::filter_from_json("not json"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::filter_from_json(R"({"M": 8, "carriers": [0]})"), ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::filter_from_json(R"({"M": 8, "carriers": [0], "coefficients": [0, 1]})"),
               ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::filter_from_json(R"({"M": 8, "N": 3, "carriers": [0], "coefficients": [1, 1]})"),
               ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::filter_from_json(R"({"M": 8, "carriers": [0, 2], "coefficients": [1]})"),
               ufofdm::ParameterError);
  EXPECT_THROW(ufofdm::filter_from_json(R"({"M": 8, "carriers": [0], "coefficients": [1], "provenance": "x"})"),
               ufofdm::ParameterError);
}

TEST(FilterFile, WriteReadAndMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "ufofdm_filter_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "f.json";
  const auto doc = random_document(9);
  ufofdm::write_filter_file(path, doc);
  EXPECT_EQ(ufofdm::read_filter_file(path).filter.taps, doc.filter.taps);
  EXPECT_THROW(ufofdm::read_filter_file(dir / "missing.json"), ufofdm::ParameterError);
  std::filesystem::remove_all(dir);
}

TEST(SpecFor, RebuildsBandAndGrids) {
  const auto doc = random_document(4);
  const auto spec = ufofdm::spec_for(doc);
  EXPECT_EQ(spec.M, 128);
  EXPECT_EQ(spec.N, 16);
  EXPECT_EQ(spec.carriers, doc.carriers);
  EXPECT_EQ(spec.lambda, 1e-4);
  EXPECT_EQ(spec.stopband_grid, 240);
  EXPECT_EQ(spec.nonneg_grid, 256);
}

TEST(MakeDocument, CarriesDesignBand) {
  const auto spec = ufofdm::DesignSpec::defaults(1e-2);
  const auto doc = ufofdm::make_document(spec, ufofdm::FirFilter{{1.0, 0.5}, ufofdm::provenance::Designed{1e-2}});
  EXPECT_EQ(doc.M, spec.M);
  EXPECT_EQ(doc.carriers, spec.carriers);
  EXPECT_EQ(doc.g.g, (std::vector<double>{1.25, 0.5}));
}

}  // namespace
