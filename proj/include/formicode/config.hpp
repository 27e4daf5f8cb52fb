#pragma once

#include <string>

#include "formicode/errors.hpp"
#include "formicode/simulation.hpp"

namespace formicode {

// JSON experiment-config schema. Versioned; unknown fields are rejected at
// every level so a typo cannot silently change an experiment.
inline constexpr int kConfigSchemaVersion = 1;

// Parses and validates. Throws ConfigError with a message naming the
// offending field or stage.
ExperimentConfig config_from_json_text(const std::string& text);

// Reads the file (IoError if unreadable), parses and validates.
ExperimentConfig load_config(const std::string& path);

// Minified, key-sorted form of the document; hash this for manifests.
std::string canonical_json_text(const std::string& text);

}  // namespace formicode
