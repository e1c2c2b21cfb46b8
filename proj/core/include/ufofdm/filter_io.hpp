#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ufofdm/spectral_factorization.hpp"

namespace ufofdm {

/// A filter together with the band it was built for, as stored on disk:
///
///   {"M": 128, "N": 16, "carriers": [4, ..., 19], "lambda": 1e-4,
///    "coefficients": [...], "g": [...], "provenance": "designed",
///    "created_by_version": "0.1.0"}
///
/// "lambda" is present only for designed filters and "attenuation_db" only
/// for Dolph-Chebyshev ones. Doubles are written in shortest round-trip form.
struct FilterDocument {
  int M = 0;
  std::vector<int> carriers;
  FirFilter filter;
  Autocorrelation g;
};

std::string to_json(const FilterDocument& doc);
/// Throws ParameterError on malformed documents.
FilterDocument filter_from_json(const std::string& text);

void write_filter_file(const std::filesystem::path& path, const FilterDocument& doc);
FilterDocument read_filter_file(const std::filesystem::path& path);

/// Spec for the band a document was built for, with N taken from its filter
/// and the grids sized S = 15N, G = 16N.
DesignSpec spec_for(const FilterDocument& doc, const DesignSpec& base = DesignSpec::defaults());

}  // namespace ufofdm
