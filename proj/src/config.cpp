#include "formicode/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace formicode {

namespace {

using nlohmann::json;

// Fail-closed field checking: unknown keys are configuration mistakes.
void check_fields(const json& obj, const std::string& context,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) {
    throw ConfigError(context + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      throw ConfigError(context + ": unknown field '" + key + "'");
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) {
      throw ConfigError(context + ": missing required field '" + key + "'");
    }
  }
}

template <typename T>
T get_number(const json& obj, const std::string& context, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(context + ": field '" + key + "' must be a number");
  }
  return v.get<T>();
}

MazeGeometry parse_maze(const json& obj) {
  check_fields(obj, "maze", {"type"}, {"depth", "layout", "branch_count",
                                       "branch_length_cm", "branch_spacing_cm"});
  const std::string type = obj.at("type").get<std::string>();
  if (type == "binary_tree") {
    check_fields(obj, "maze (binary_tree)", {"type", "depth"}, {});
    const int depth = get_number<int>(obj, "maze", "depth");
    // Simulations enumerate goal positions, so cap the depth well below the
    // 63-fork limit of the core type.
    if (depth < 1 || depth > 20) {
      throw ConfigError("maze: depth must be in [1, 20] for simulation");
    }
    return TreeGeometry{depth};
  }
  if (type == "comb") {
    check_fields(obj, "maze (comb)", {"type", "layout", "branch_count"},
                 {"branch_length_cm", "branch_spacing_cm"});
    CombGeometry comb;
    try {
      comb.layout = comb_layout_from_string(obj.at("layout").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("maze: ") + e.what());
    }
    comb.branch_count = get_number<int>(obj, "maze", "branch_count");
    if (comb.branch_count < 2 || comb.branch_count > 10000) {
      throw ConfigError("maze: branch_count must be in [2, 10000]");
    }
    if (obj.contains("branch_length_cm")) {
      comb.branch_length_cm = get_number<double>(obj, "maze", "branch_length_cm");
    }
    if (obj.contains("branch_spacing_cm")) {
      comb.branch_spacing_cm =
          get_number<double>(obj, "maze", "branch_spacing_cm");
    }
    return comb;
  }
  throw ConfigError("maze: unknown type '" + type +
                    "' (expected binary_tree or comb)");
}

TimeModel parse_time_model(const json& obj) {
  check_fields(obj, "time_model", {"seconds_per_symbol", "overhead_seconds"},
               {"noise_sd_seconds"});
  try {
    return TimeModel(
        get_number<double>(obj, "time_model", "seconds_per_symbol"),
        get_number<double>(obj, "time_model", "overhead_seconds"),
        obj.contains("noise_sd_seconds")
            ? get_number<double>(obj, "time_model", "noise_sd_seconds")
            : 0.0);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("time_model: ") + e.what());
  }
}

MessageDistribution parse_distribution(const json& obj,
                                       const std::string& where,
                                       const MazeGeometry& maze) {
  check_fields(obj, where + " distribution", {"kind"},
               {"anchors", "anchor_probability", "probabilities"});
  const std::string kind = obj.at("kind").get<std::string>();

  const std::int64_t first =
      std::holds_alternative<TreeGeometry>(maze) ? 0 : 1;
  const std::int64_t last =
      std::holds_alternative<TreeGeometry>(maze)
          ? (std::int64_t{1} << std::get<TreeGeometry>(maze).depth) - 1
          : std::get<CombGeometry>(maze).branch_count;

  if (kind == "uniform") {
    check_fields(obj, where + " distribution (uniform)", {"kind"}, {});
    return MessageDistribution::uniform(static_cast<int>(first),
                                        static_cast<int>(last));
  }
  if (kind == "anchored") {
    check_fields(obj, where + " distribution (anchored)",
                 {"kind", "anchors", "anchor_probability"}, {});
    const auto anchors = obj.at("anchors").get<std::vector<int>>();
    const double anchor_p =
        get_number<double>(obj, where + " distribution", "anchor_probability");
    if (anchors.empty()) {
      throw ConfigError(where + " distribution: anchors must be nonempty");
    }
    const double anchored_mass = anchor_p * static_cast<double>(anchors.size());
    const auto total = static_cast<double>(last - first + 1);
    const auto rest = total - static_cast<double>(anchors.size());
    if (!(anchor_p > 0.0) || anchored_mass > 1.0) {
      throw ConfigError(where +
                        " distribution: anchor_probability out of range");
    }
    std::map<int, double> probs;
    const double rest_p = rest > 0 ? (1.0 - anchored_mass) / rest : 0.0;
    for (std::int64_t i = first; i <= last; ++i) {
      probs[static_cast<int>(i)] = rest_p;
    }
    for (int a : anchors) {
      if (a < first || a > last) {
        throw ConfigError(where + " distribution: anchor " + std::to_string(a) +
                          " outside the maze range");
      }
      probs[a] = anchor_p;
    }
    try {
      return MessageDistribution(std::move(probs));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + " distribution: " + e.what());
    }
  }
  if (kind == "explicit") {
    check_fields(obj, where + " distribution (explicit)",
                 {"kind", "probabilities"}, {});
    std::map<int, double> probs;
    for (const auto& [key, value] : obj.at("probabilities").items()) {
      int index = 0;
      try {
        index = std::stoi(key);
      } catch (const std::exception&) {
        throw ConfigError(where + " distribution: non-integer index '" + key +
                          "'");
      }
      if (!value.is_number()) {
        throw ConfigError(where + " distribution: probability for '" + key +
                          "' must be a number");
      }
      probs[index] = value.get<double>();
    }
    try {
      return MessageDistribution(std::move(probs));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + " distribution: " + e.what());
    }
  }
  throw ConfigError(where + " distribution: unknown kind '" + kind + "'");
}

CodingPolicy parse_coding(const json& obj, const std::string& where) {
  check_fields(obj, where + " coding", {"scheme"},
               {"anchors", "anchor_name_length"});
  const std::string scheme = obj.at("scheme").get<std::string>();
  if (scheme == "unitary") {
    check_fields(obj, where + " coding (unitary)", {"scheme"}, {});
    return UnitaryCoding{};
  }
  if (scheme == "compressed_route") {
    check_fields(obj, where + " coding (compressed_route)", {"scheme"}, {});
    return CompressedRouteCoding{};
  }
  if (scheme == "optimal_prefix") {
    check_fields(obj, where + " coding (optimal_prefix)", {"scheme"}, {});
    return OptimalPrefixCoding{};
  }
  if (scheme == "anchor") {
    check_fields(obj, where + " coding (anchor)", {"scheme", "anchors"},
                 {"anchor_name_length"});
    try {
      return AnchorCoding{AnchorScheme(
          obj.at("anchors").get<std::vector<int>>(),
          obj.contains("anchor_name_length")
              ? get_number<double>(obj, where + " coding", "anchor_name_length")
              : 1.0)};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + " coding: " + e.what());
    }
  }
  throw ConfigError(where + " coding: unknown scheme '" + scheme + "'");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }

  check_fields(doc, "config",
               {"schema_version", "seed", "maze", "time_model", "stages"},
               {"per_symbol_decode_error", "trials_per_stage",
                "seconds_per_branch_check", "search_budget_seconds"});

  const int version = get_number<int>(doc, "config", "schema_version");
  if (version != kConfigSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(version) +
                      " (this tool reads version " +
                      std::to_string(kConfigSchemaVersion) + ")");
  }

  ExperimentConfig config{.maze = parse_maze(doc.at("maze")),
                          .stages = {},
                          .time_model = parse_time_model(doc.at("time_model"))};
  config.seed = get_number<std::uint64_t>(doc, "config", "seed");

  if (doc.contains("per_symbol_decode_error")) {
    config.per_symbol_decode_error =
        get_number<double>(doc, "config", "per_symbol_decode_error");
  }
  if (doc.contains("trials_per_stage")) {
    config.trials_per_stage = get_number<int>(doc, "config", "trials_per_stage");
  }
  if (doc.contains("seconds_per_branch_check")) {
    config.seconds_per_branch_check =
        get_number<double>(doc, "config", "seconds_per_branch_check");
  }
  if (doc.contains("search_budget_seconds")) {
    config.search_budget_seconds =
        get_number<double>(doc, "config", "search_budget_seconds");
  }

  const json& stages = doc.at("stages");
  if (!stages.is_array() || stages.empty()) {
    throw ConfigError("stages must be a nonempty array");
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string where = "stage " + std::to_string(i + 1);
    check_fields(stages[i], where, {"distribution", "coding"}, {});
    config.stages.push_back(
        StagePlan{parse_distribution(stages[i].at("distribution"), where,
                                     config.maze),
                  parse_coding(stages[i].at("coding"), where)});
  }

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

std::string canonical_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return doc.dump();  // key-sorted, minimal whitespace
}

}  // namespace formicode
