#include "ufofdm/filter_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ufofdm/errors.hpp"
#include "ufofdm/version.hpp"

namespace ufofdm {

using nlohmann::ordered_json;

std::string to_json(const FilterDocument& doc) {
  ordered_json j;
  j["M"] = doc.M;
  j["N"] = doc.filter.length();
  j["carriers"] = doc.carriers;
  if (const auto* d = std::get_if<provenance::Designed>(&doc.filter.provenance)) j["lambda"] = d->lambda;
  if (const auto* d = std::get_if<provenance::DolphChebyshev>(&doc.filter.provenance)) {
    j["attenuation_db"] = d->attenuation_db;
  }
  j["coefficients"] = doc.filter.taps;
  j["g"] = doc.g.g;
  j["provenance"] = provenance_name(doc.filter.provenance);
  j["created_by_version"] = kVersion;
  return j.dump(2) + "\n";
}

FilterDocument filter_from_json(const std::string& text) {
  FilterDocument doc;
  try {
    const auto j = ordered_json::parse(text);
    doc.M = j.at("M").get<int>();
    doc.carriers = j.at("carriers").get<std::vector<int>>();
    doc.filter.taps = j.at("coefficients").get<std::vector<double>>();
    if (j.contains("g")) doc.g.g = j.at("g").get<std::vector<double>>();
    const std::string kind = j.value("provenance", std::string("external"));
    if (kind == "designed") {
      doc.filter.provenance = provenance::Designed{j.value("lambda", 0.0)};
    } else if (kind == "dolph_chebyshev") {
      doc.filter.provenance = provenance::DolphChebyshev{j.value("attenuation_db", 0.0)};
    } else if (kind == "identity") {
      doc.filter.provenance = provenance::Identity{};
    } else if (kind == "external") {
      doc.filter.provenance = provenance::External{};
    } else {
      throw ParameterError("unknown filter provenance '" + kind + "'");
    }
    if (j.contains("N") && j.at("N").get<int>() != doc.filter.length()) {
      throw ParameterError("filter document: N does not match the coefficient count");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed filter document: ") + e.what());
  }
  doc.filter.validate();
  if (doc.g.g.empty()) doc.g = autocorrelation(doc.filter);
  carrier_run_start(doc.M, doc.carriers);
  return doc;
}

void write_filter_file(const std::filesystem::path& path, const FilterDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
  out << to_json(doc);
  if (!out) throw ParameterError("failed writing '" + path.string() + "'");
}

FilterDocument read_filter_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read filter file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return filter_from_json(buf.str());
}

DesignSpec spec_for(const FilterDocument& doc, const DesignSpec& base) {
  DesignSpec spec = base;
  spec.M = doc.M;
  spec.N = doc.filter.length();
  spec.stopband_grid = 15 * spec.N;
  spec.nonneg_grid = 16 * spec.N;
  spec.carriers = doc.carriers;
  if (const auto* d = std::get_if<provenance::Designed>(&doc.filter.provenance)) spec.lambda = d->lambda;
  return spec;
}

}  // namespace ufofdm
