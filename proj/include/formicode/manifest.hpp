#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace formicode {

inline constexpr const char* kToolVersion = "0.1.0";

// Audit record emitted once per CLI run: what ran, over which inputs (as a
// hash of their canonical JSON form), with which seed, producing which files.
struct RunManifest {
  std::string command;
  std::string config_hash;  // hex64 of canonical JSON inputs
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace formicode
