#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "ufofdm/errors.hpp"

namespace ufofdm::cli {

using nlohmann::ordered_json;

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read '" + path.string() + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    char byte[3];
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

FileDigest digest(const std::filesystem::path& path) { return {path.string(), sha256_file(path)}; }

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

namespace {

ordered_json digests_to_json(const std::vector<FileDigest>& files) {
  ordered_json out = ordered_json::array();
  for (const auto& f : files) out.push_back({{"path", f.path}, {"sha256", f.sha256}});
  return out;
}

std::vector<FileDigest> digests_from_json(const ordered_json& j) {
  std::vector<FileDigest> out;
  for (const auto& f : j) out.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
  return out;
}

}  // namespace

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["working_directory"] = m.working_directory;
  j["params"] = m.params;
  j["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
  j["version"] = m.version;
  j["inputs"] = digests_to_json(m.inputs);
  j["outputs"] = digests_to_json(m.outputs);
  j["results"] = m.results;
  j["duration_s"] = m.duration_s;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read manifest '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  RunManifest m;
  try {
    const auto j = ordered_json::parse(buf.str());
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.working_directory = j.value("working_directory", std::string());
    m.params = j.value("params", ordered_json::object());
    m.results = j.value("results", ordered_json::object());
    if (j.contains("seed") && !j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.value("version", std::string());
    m.inputs = digests_from_json(j.value("inputs", ordered_json::array()));
    m.outputs = digests_from_json(j.value("outputs", ordered_json::array()));
    m.duration_s = j.value("duration_s", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

}  // namespace ufofdm::cli
