#include "formicode/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "formicode/errors.hpp"
#include "formicode/hashing.hpp"

namespace formicode {

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["config_hash"] = manifest.config_hash;
  doc["seed"] = manifest.seed;
  doc["tool_version"] = manifest.tool_version;
  doc["outputs"] = manifest.outputs;
  return doc.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << manifest_json(manifest);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace formicode
