#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ufofdm::cli {

struct FileDigest {
  std::string path;
  std::string sha256;
};

/// Everything needed to re-run a command and check its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  ///< arguments after the program name
  std::string working_directory;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::string version;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  double duration_s = 0.0;
};

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

FileDigest digest(const std::filesystem::path& path);

/// `<output>.manifest.json`
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace ufofdm::cli
