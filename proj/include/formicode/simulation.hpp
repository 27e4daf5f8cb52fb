#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "formicode/coding.hpp"
#include "formicode/maze.hpp"

namespace formicode {

// Maze geometry with the goal left open; a goal is sampled per trial.
struct TreeGeometry {
  int depth;
};

struct CombGeometry {
  CombLayout layout;
  int branch_count;
  std::optional<double> branch_length_cm;
  std::optional<double> branch_spacing_cm;
};

using MazeGeometry = std::variant<TreeGeometry, CombGeometry>;

// Per-stage coding scheme. On a binary tree, unitary coding transmits the
// turn sequence verbatim (length = depth), so contact time is affine in the
// information content; compressed_route applies the period-repetition proxy
// first. Unitary and anchor coding require a comb, compressed_route a tree.
struct UnitaryCoding {};
struct CompressedRouteCoding {};
struct AnchorCoding {
  AnchorScheme scheme;
};
struct OptimalPrefixCoding {};

using CodingPolicy = std::variant<UnitaryCoding, CompressedRouteCoding,
                                  AnchorCoding, OptimalPrefixCoding>;

struct StagePlan {
  MessageDistribution goal_distribution;
  CodingPolicy coding;
};

struct ExperimentConfig {
  MazeGeometry maze;
  std::vector<StagePlan> stages;
  TimeModel time_model;
  double per_symbol_decode_error = 0.02;  // in [0, 1)
  int trials_per_stage = 100;
  std::uint64_t seed = 0;
  double seconds_per_branch_check = 5.0;
  double search_budget_seconds = 1800.0;  // cap used by naive_vs_informed

  // First and last goal position: [1, branch_count] or [0, 2^depth).
  std::int64_t first_position() const;
  std::int64_t last_position() const;

  // Throws std::invalid_argument naming the offending stage.
  void validate() const;
};

// One scout-to-team transmission followed by the team's search.
struct TrialRecord {
  int trial_id = 0;
  int stage = 0;
  std::int64_t goal = 0;
  double code_length = 0.0;
  double contact_duration_s = 0.0;  // >= 1 s
  std::int64_t decoded_goal = 0;
  bool success = false;             // goal found on first approach
  double search_time_s = 0.0;       // neighbor checks after the first approach

  bool operator==(const TrialRecord&) const = default;
};

// Runs one trial. All randomness derives from (config.seed, trial_id), so
// records do not depend on execution order and trials can run concurrently.
TrialRecord run_trial(const ExperimentConfig& config, int stage_index,
                      int trial_id);

// trials_per_stage trials per stage, in stage order, with globally
// increasing trial ids. Byte-for-byte reproducible from the seed.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

struct PairedSearchSamples {
  std::vector<double> naive_s;
  std::vector<double> informed_s;
};

// Control comparison: informed searchers receive the stage-0 message
// (subject to decode error); naive searchers visit positions in uniformly
// random order. Both search times are capped at search_budget_seconds.
PairedSearchSamples naive_vs_informed(const ExperimentConfig& config,
                                      std::mt19937_64& rng);

}  // namespace formicode
