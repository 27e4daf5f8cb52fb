#include "formicode/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace formicode {

namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, int trial_id) {
  const auto tid = static_cast<std::uint64_t>(trial_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tid),
                    static_cast<std::uint32_t>(tid >> 32)};
  return std::mt19937_64(seq);
}

struct StageContext {
  std::vector<std::pair<int, double>> cumulative;  // goal -> cdf
  std::optional<PrefixCode> prefix_code;
};

StageContext build_stage_context(const ExperimentConfig& config,
                                 int stage_index) {
  const StagePlan& stage = config.stages.at(static_cast<std::size_t>(stage_index));
  StageContext ctx;
  double cum = 0.0;
  for (const auto& [goal, p] : stage.goal_distribution.probabilities()) {
    if (p <= 0.0) continue;
    cum += p;
    ctx.cumulative.emplace_back(goal, cum);
  }
  if (std::holds_alternative<OptimalPrefixCoding>(stage.coding)) {
    ctx.prefix_code = optimal_prefix_lengths(stage.goal_distribution);
  }
  return ctx;
}

int sample_goal(const StageContext& ctx, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (const auto& [goal, cum] : ctx.cumulative) {
    if (u < cum) return goal;
  }
  return ctx.cumulative.back().first;  // guard against cdf rounding short of 1
}

CodeWord encode_goal(const ExperimentConfig& config, const StagePlan& stage,
                     const StageContext& ctx, std::int64_t goal) {
  return std::visit(
      [&](const auto& policy) -> CodeWord {
        using P = std::decay_t<decltype(policy)>;
        if constexpr (std::is_same_v<P, UnitaryCoding>) {
          if (const auto* tree = std::get_if<TreeGeometry>(&config.maze)) {
            // The message is the turn sequence itself, one symbol per fork.
            const Route route = leaf_to_route(
                BinaryTreeMaze(tree->depth, static_cast<std::uint64_t>(goal)));
            CodeWord word;
            for (char turn : route) word.description.emplace_back(1, turn);
            word.length = static_cast<double>(route.size());
            return word;
          }
          return unitary_encode(static_cast<int>(goal));
        } else if constexpr (std::is_same_v<P, CompressedRouteCoding>) {
          const auto& tree = std::get<TreeGeometry>(config.maze);
          return compress_route(leaf_to_route(
              BinaryTreeMaze(tree.depth, static_cast<std::uint64_t>(goal))));
        } else if constexpr (std::is_same_v<P, AnchorCoding>) {
          return anchor_encode(static_cast<int>(goal), policy.scheme);
        } else {
          const int bits = ctx.prefix_code->lengths.at(static_cast<int>(goal));
          CodeWord word;
          word.description.assign(static_cast<std::size_t>(bits), "*");
          word.length = static_cast<double>(bits);
          return word;
        }
      },
      stage.coding);
}

// Positions checked until the goal is reached, scanning outward from the
// decoded position, +1 before -1, clipped to the maze range.
std::int64_t positions_checked(std::int64_t decoded, std::int64_t goal,
                               std::int64_t first, std::int64_t last) {
  if (decoded == goal) return 1;
  std::int64_t checked = 1;
  for (std::int64_t offset = 1;; ++offset) {
    if (decoded + offset <= last) {
      ++checked;
      if (decoded + offset == goal) return checked;
    }
    if (decoded - offset >= first) {
      ++checked;
      if (decoded - offset == goal) return checked;
    }
  }
}

TrialRecord run_trial_impl(const ExperimentConfig& config, int stage_index,
                           int trial_id, const StageContext& ctx) {
  const StagePlan& stage = config.stages[static_cast<std::size_t>(stage_index)];
  std::mt19937_64 rng = trial_engine(config.seed, trial_id);

  TrialRecord record;
  record.trial_id = trial_id;
  record.stage = stage_index;
  record.goal = sample_goal(ctx, rng);

  const CodeWord word = encode_goal(config, stage, ctx, record.goal);
  record.code_length = word.length;
  record.contact_duration_s = transmission_time(word, config.time_model, &rng);

  // Channel: each transmitted symbol is independently corrupted; a garbled
  // message sends the team to a uniformly random position.
  bool corrupted = false;
  std::bernoulli_distribution symbol_error(config.per_symbol_decode_error);
  for (std::size_t i = 0; i < word.description.size(); ++i) {
    corrupted |= symbol_error(rng);
  }
  if (corrupted) {
    std::uniform_int_distribution<std::int64_t> anywhere(
        config.first_position(), config.last_position());
    record.decoded_goal = anywhere(rng);
  } else {
    record.decoded_goal = record.goal;
  }

  record.success = record.decoded_goal == record.goal;
  const std::int64_t checked =
      positions_checked(record.decoded_goal, record.goal,
                        config.first_position(), config.last_position());
  record.search_time_s =
      static_cast<double>(checked - 1) * config.seconds_per_branch_check;
  return record;
}

}  // namespace

std::int64_t ExperimentConfig::first_position() const {
  return std::holds_alternative<TreeGeometry>(maze) ? 0 : 1;
}

std::int64_t ExperimentConfig::last_position() const {
  if (const auto* tree = std::get_if<TreeGeometry>(&maze)) {
    return (std::int64_t{1} << tree->depth) - 1;
  }
  return std::get<CombGeometry>(maze).branch_count;
}

void ExperimentConfig::validate() const {
  if (const auto* tree = std::get_if<TreeGeometry>(&maze)) {
    if (tree->depth < 1 || tree->depth > 63) {
      throw std::invalid_argument("tree depth must be in [1, 63]");
    }
  } else {
    const auto& comb = std::get<CombGeometry>(maze);
    if (comb.branch_count < 2) {
      throw std::invalid_argument("comb needs at least 2 branches");
    }
  }
  if (stages.empty()) {
    throw std::invalid_argument("experiment needs at least one stage");
  }
  if (trials_per_stage < 1) {
    throw std::invalid_argument("trials_per_stage must be >= 1");
  }
  if (!(per_symbol_decode_error >= 0.0) || !(per_symbol_decode_error < 1.0)) {
    throw std::invalid_argument("per_symbol_decode_error must be in [0, 1)");
  }
  if (!(seconds_per_branch_check > 0.0)) {
    throw std::invalid_argument("seconds_per_branch_check must be > 0");
  }
  if (!(search_budget_seconds > 0.0)) {
    throw std::invalid_argument("search_budget_seconds must be > 0");
  }

  const bool is_tree = std::holds_alternative<TreeGeometry>(maze);
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::string where = "stage " + std::to_string(s + 1) + ": ";
    const StagePlan& stage = stages[s];

    const std::vector<int> support = stage.goal_distribution.support();
    if (support.empty()) {
      throw std::invalid_argument(where + "goal distribution has empty support");
    }
    for (int goal : support) {
      if (goal < first_position() || goal > last_position()) {
        throw std::invalid_argument(
            where + "goal " + std::to_string(goal) +
            " outside the maze range [" + std::to_string(first_position()) +
            ", " + std::to_string(last_position()) + "]");
      }
    }

    if (std::holds_alternative<CompressedRouteCoding>(stage.coding) && !is_tree) {
      throw std::invalid_argument(where +
                                  "compressed_route coding needs a tree maze");
    }
    if (const auto* anchor = std::get_if<AnchorCoding>(&stage.coding)) {
      if (is_tree) {
        throw std::invalid_argument(where + "anchor coding needs a comb maze");
      }
      for (int a : anchor->scheme.anchors) {
        if (a < 1 || a > last_position()) {
          throw std::invalid_argument(where + "anchor " + std::to_string(a) +
                                      " outside the branch range");
        }
      }
    }
  }
}

TrialRecord run_trial(const ExperimentConfig& config, int stage_index,
                      int trial_id) {
  config.validate();
  if (stage_index < 0 ||
      stage_index >= static_cast<int>(config.stages.size())) {
    throw std::invalid_argument("stage index out of range");
  }
  const StageContext ctx = build_stage_context(config, stage_index);
  return run_trial_impl(config, stage_index, trial_id, ctx);
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialRecord> records;
  records.reserve(config.stages.size() *
                  static_cast<std::size_t>(config.trials_per_stage));
  for (std::size_t s = 0; s < config.stages.size(); ++s) {
    const StageContext ctx = build_stage_context(config, static_cast<int>(s));
    for (int t = 0; t < config.trials_per_stage; ++t) {
      const int trial_id =
          static_cast<int>(s) * config.trials_per_stage + t;
      records.push_back(
          run_trial_impl(config, static_cast<int>(s), trial_id, ctx));
    }
  }
  return records;
}

PairedSearchSamples naive_vs_informed(const ExperimentConfig& config,
                                      std::mt19937_64& rng) {
  config.validate();
  const StageContext ctx = build_stage_context(config, 0);
  const StagePlan& stage = config.stages.front();
  const std::int64_t first = config.first_position();
  const std::int64_t last = config.last_position();
  const double spc = config.seconds_per_branch_check;
  const double budget = config.search_budget_seconds;

  PairedSearchSamples samples;
  samples.naive_s.reserve(static_cast<std::size_t>(config.trials_per_stage));
  samples.informed_s.reserve(static_cast<std::size_t>(config.trials_per_stage));

  std::bernoulli_distribution symbol_error(config.per_symbol_decode_error);
  std::uniform_int_distribution<std::int64_t> anywhere(first, last);

  for (int t = 0; t < config.trials_per_stage; ++t) {
    const std::int64_t goal = sample_goal(ctx, rng);

    const CodeWord word = encode_goal(config, stage, ctx, goal);
    bool corrupted = false;
    for (std::size_t i = 0; i < word.description.size(); ++i) {
      corrupted |= symbol_error(rng);
    }
    const std::int64_t decoded = corrupted ? anywhere(rng) : goal;
    const std::int64_t informed_checks =
        positions_checked(decoded, goal, first, last);
    samples.informed_s.push_back(
        std::min(static_cast<double>(informed_checks - 1) * spc, budget));

    // A uniformly random visiting order puts the goal at a uniform rank.
    const std::int64_t naive_rank =
        std::uniform_int_distribution<std::int64_t>(1, last - first + 1)(rng);
    samples.naive_s.push_back(
        std::min(static_cast<double>(naive_rank - 1) * spc, budget));
  }
  return samples;
}

}  // namespace formicode
