// Acceptance suite: one pass/fail line per criterion. Usage:
//   acceptance_tests <path-to-formicode-cli> <configs-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "formicode/coding.hpp"
#include "formicode/data.hpp"
#include "formicode/maze.hpp"
#include "formicode/simulation.hpp"
#include "formicode/stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace formicode;
using namespace formicode::oracles;

namespace {

std::string g_cli_path;
std::string g_configs_dir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// ---- criterion 1: route count --------------------------------------------

Outcome route_count() {
  const std::uint64_t routes = total_routes(6);
  return {routes == 126, "total_routes(6) = " + std::to_string(routes)};
}

// ---- criterion 2: permutation test ----------------------------------------

Outcome permutation_exact() {
  const BigRational p = permutation_order_test({2, 2, 3});
  const BigRational brute = oracle_order_probability({2, 2, 3});
  const bool pass = p == BigRational(1, 210) && brute == p;
  return {pass, "p = " + p.str() + ", brute-force enumeration = " + brute.str()};
}

// ---- criterion 3: binomial argument ---------------------------------------

Outcome binomial_argument() {
  const double tail = binomial_tail(152, 117, 1.0 / 25.0);
  const double logspace = binomial_tail_log(30, 20, 1.0 / 25.0);
  const double exact = to_double(oracle_binomial_tail(30, 20, BigRational(1, 25)));
  const double rel = std::abs(logspace - exact) / exact;
  const bool pass = tail < 1e-10 && rel < 1e-12;
  return {pass, "tail(152,117,1/25) = " + fmt(tail) +
                    "; log vs exact at (30,20,1/25): rel diff " + fmt(rel, 3)};
}

// ---- criterion 4: vertical-trunk fit ---------------------------------------

Outcome trunk_fit() {
  const Dataset data = table_to_dataset(
      load_table(3), {.x_column = "branch", .t_column = "contact_duration_s"});
  std::vector<double> xs, ys;
  for (const DataPoint& p : data.points) {
    xs.push_back(p.x);
    ys.push_back(p.t);
  }
  const FitResult fit = linear_fit(xs, ys);
  const bool pass = fit.r >= 0.92 && fit.r <= 0.94 && fit.slope >= 6.8 &&
                    fit.slope <= 8.0 && fit.intercept >= -40.0 &&
                    fit.intercept <= -20.0;
  return {pass, "r = " + fmt(fit.r) + " (window [0.92, 0.94]), slope = " +
                    fmt(fit.slope) + " ([6.8, 8.0]), intercept = " +
                    fmt(fit.intercept) + " ([-40, -20])"};
}

// ---- criterion 5: anchor-distance correlation ------------------------------

Outcome anchor_correlation() {
  const Dataset data = table_to_dataset(
      load_table(5), {.x_column = "branch", .t_column = "times_s"});
  std::vector<BranchTime> records;
  for (const DataPoint& p : data.points) {
    records.push_back({static_cast<int>(p.x), p.t});
  }
  const FitResult fit = anchor_distance_correlation(records, {10, 20});
  const bool pass = records.size() == 44 && fit.r >= 0.7;
  return {pass, "r = " + fmt(fit.r) + " over " +
                    std::to_string(records.size()) +
                    " observations (threshold 0.7)"};
}

// ---- criterion 6: compression ordering -------------------------------------

Outcome compression_ordering() {
  const std::vector<std::vector<std::string>> groups = {
      {"LLLLLL", "RRRRRR"}, {"LRLRLR", "RLRLRL"}, {"RLRRRL", "RRLRRR", "LRLLRL"}};

  // Proxy ranks must be strictly increasing across the groups: every member
  // of a later group ranks above every member of an earlier one.
  double previous_rank_max = 0.0;
  bool ranks_ok = true;
  std::string rank_spans;
  for (const auto& group : groups) {
    double lo = 1e300, hi = 0.0;
    for (const auto& sequence : group) {
      const double rank = complexity_class(Route(sequence));
      lo = std::min(lo, rank);
      hi = std::max(hi, rank);
    }
    ranks_ok = ranks_ok && lo > previous_rank_max;
    previous_rank_max = hi;
    if (!rank_spans.empty()) rank_spans += " < ";
    rank_spans += fmt(lo) + (lo == hi ? "" : "-" + fmt(hi));
  }

  // Mean contact durations from the embedded data must follow the same order.
  const PaperTable& table = load_table(2);
  std::map<std::string, double> durations;
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    durations[std::get<std::string>(table.at(row, "sequence"))] =
        std::get<double>(table.at(row, "mean_duration_s"));
  }
  bool durations_ok = true;
  double previous_max = 0.0;
  std::string spans;
  for (const auto& group : groups) {
    double lo = 1e9, hi = 0.0;
    for (const auto& sequence : group) {
      lo = std::min(lo, durations.at(sequence));
      hi = std::max(hi, durations.at(sequence));
    }
    durations_ok = durations_ok && lo > previous_max;
    previous_max = hi;
    if (!spans.empty()) spans += " < ";
    spans += fmt(lo) + "-" + fmt(hi);
  }

  const CodeWord w8l = compress_route(Route("LLLLLLLL"));
  const CodeWord w4lr = compress_route(Route("LRLRLRLR"));
  const bool worked = w8l.joined() == "8L" && w8l.length == 2.0 &&
                      w4lr.joined() == "4LR" && w4lr.length == 3.0;

  return {ranks_ok && durations_ok && worked,
          "group ranks " + rank_spans + "; durations " + spans +
              "; worked examples " + w8l.joined() + ", " + w4lr.joined()};
}

// ---- criterion 7: entropy bound --------------------------------------------

Outcome entropy_bound() {
  std::map<int, double> probs;
  for (int i = 1; i <= 30; ++i) probs[i] = 1.0 / 84.0;
  probs[10] = probs[20] = 1.0 / 3.0;
  const MessageDistribution stage2(probs);
  const PrefixCode code = optimal_prefix_lengths(stage2);
  const CodeStats stats = code_stats(code.lengths, stage2);

  const double reference_entropy = 3.1874141414070242;  // (2/3)log2 3 + (1/3)log2 84
  bool pass = std::abs(stats.entropy_bits - reference_entropy) < 1e-9 &&
              stats.expected_length_bits >= stats.entropy_bits &&
              stats.expected_length_bits < stats.entropy_bits + 1.0;

  std::mt19937_64 rng(20260810);
  int kraft_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int support = 2 + int(rng() % 39);
    std::map<int, double> weights;
    double total = 0.0;
    for (int i = 1; i <= support; ++i) {
      weights[i] = std::uniform_real_distribution<double>(1e-3, 1.0)(rng);
      total += weights[i];
    }
    for (auto& [index, w] : weights) w /= total;
    const PrefixCode random_code =
        optimal_prefix_lengths(MessageDistribution(weights));
    double kraft = 0.0;
    for (const auto& [index, length] : random_code.lengths) {
      kraft += std::ldexp(1.0, -length);
    }
    kraft_failures += kraft > 1.0 + 1e-12;
  }
  pass = pass && kraft_failures == 0;

  return {pass, "H = " + fmt(stats.entropy_bits, 10) +
                    ", E[L] = " + fmt(stats.expected_length_bits, 10) +
                    "; Kraft failures over 1000 random codes: " +
                    std::to_string(kraft_failures)};
}

// ---- criterion 8: rate recovery ---------------------------------------------

ExperimentConfig tree_config(int depth, double a, double b, double noise,
                             std::uint64_t seed, int trials) {
  ExperimentConfig config{
      .maze = TreeGeometry{depth},
      .stages = {StagePlan{
          MessageDistribution::uniform(0, (1 << depth) - 1), UnitaryCoding{}}},
      .time_model = TimeModel(a, b, noise)};
  config.per_symbol_decode_error = 0.0;
  config.trials_per_stage = trials;
  config.seed = seed;
  return config;
}

Outcome rate_recovery() {
  // Exact inversion without noise.
  bool exact_ok = true;
  std::string exact_detail;
  for (const double rate : {0.5, 0.738, 1.094, 2.0}) {
    std::vector<double> bits, seconds;
    for (int depth = 2; depth <= 6; ++depth) {
      const ExperimentConfig config =
          tree_config(depth, 60.0 / rate, 30.0, 0.0, 99, 8);
      for (const TrialRecord& r : run_experiment(config)) {
        bits.push_back(information_bits(
            BinaryTreeMaze(depth, static_cast<std::uint64_t>(r.goal))));
        seconds.push_back(r.contact_duration_s);
      }
    }
    const double recovered = transmission_rate(bits, seconds);
    exact_ok = exact_ok && std::abs(recovered - rate) < 1e-9;
  }

  // 200 noisy trials at 1 bit/min.
  std::vector<double> bits, seconds;
  for (int depth = 2; depth <= 6; ++depth) {
    const ExperimentConfig config =
        tree_config(depth, 60.0, 30.0, 10.0, 4242 + depth, 40);
    for (const TrialRecord& r : run_experiment(config)) {
      bits.push_back(static_cast<double>(depth));
      seconds.push_back(r.contact_duration_s);
    }
  }
  const double noisy = transmission_rate(bits, seconds);
  const bool noisy_ok = bits.size() == 200 && std::abs(noisy - 1.0) <= 0.1;

  return {exact_ok && noisy_ok,
          "noiseless recovery exact for {0.5, 0.738, 1.094, 2.0}; noisy "
          "200-trial estimate = " +
              fmt(noisy) + " bits/min (target 1.0 +- 0.1)"};
}

// ---- criterion 9: third-stage shape ----------------------------------------

Outcome third_stage_shape() {
  std::map<int, double> anchored;
  for (int i = 1; i <= 30; ++i) anchored[i] = 1.0 / 84.0;
  anchored[10] = anchored[20] = 1.0 / 3.0;

  ExperimentConfig config{
      .maze = CombGeometry{CombLayout::horizontal, 30, {}, {}},
      .stages =
          {StagePlan{MessageDistribution::uniform(1, 30), UnitaryCoding{}},
           StagePlan{MessageDistribution(anchored), UnitaryCoding{}},
           StagePlan{MessageDistribution::uniform(1, 30),
                     AnchorCoding{AnchorScheme({10, 20})}}},
      .time_model = TimeModel(7.3, -28.9, 10.0)};
  config.per_symbol_decode_error = 0.02;
  config.trials_per_stage = 600;
  config.seed = 20260810;

  const std::vector<TrialRecord> records = run_experiment(config);

  std::map<int, std::vector<double>> stage1_by_goal, stage3_by_goal;
  std::vector<double> goals1, contacts1, goals3, contacts3;
  for (const TrialRecord& r : records) {
    if (r.stage == 0) {
      stage1_by_goal[int(r.goal)].push_back(r.contact_duration_s);
      goals1.push_back(double(r.goal));
      contacts1.push_back(r.contact_duration_s);
    } else if (r.stage == 2) {
      stage3_by_goal[int(r.goal)].push_back(r.contact_duration_s);
      goals3.push_back(double(r.goal));
      contacts3.push_back(r.contact_duration_s);
    }
  }

  bool per_branch = true;
  for (int goal = 1; goal <= 30; ++goal) {
    if (distance_to_nearest_anchor(goal, {10, 20}) > 2) continue;
    if (stage1_by_goal[goal].empty() || stage3_by_goal[goal].empty()) {
      per_branch = false;
      continue;
    }
    per_branch =
        per_branch && mean(stage3_by_goal[goal]) < mean(stage1_by_goal[goal]);
  }

  const double r1 = linear_fit(goals1, contacts1).r;
  const double r3 = linear_fit(goals3, contacts3).r;

  return {per_branch && r3 < r1,
          std::string("near-anchor stage-3 means all below stage-1: ") +
              (per_branch ? "yes" : "no") + "; r1 = " + fmt(r1) +
              ", r3 = " + fmt(r3)};
}

// ---- criterion 10: rank-sum exactness ---------------------------------------

Outcome rank_sum_exact() {
  const std::vector<double> low3 = {1, 2, 3}, high3 = {4, 5, 6};
  const TestResult p3 = rank_sum_test(low3, high3);

  std::vector<double> low9, high9;
  for (int i = 1; i <= 9; ++i) {
    low9.push_back(i);
    high9.push_back(50 + i);
  }
  const TestResult p9 = rank_sum_test(low9, high9);

  const bool pass = p3.exact && p3.p_value == 0.05 && p9.exact &&
                    std::abs(p9.p_value - 1.0 / 48620.0) < 1e-15 &&
                    p9.p_value < 0.01;
  return {pass, "3v3 p = " + fmt(p3.p_value) + " (= 1/20); 9v9 p = " +
                    fmt(p9.p_value, 8) + " (= 1/48620 < 0.01)"};
}

// ---- criterion 11: CLI determinism ------------------------------------------

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome cli_determinism() {
  const fs::path scratch = fs::path("acceptance_tmp");
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const std::string config =
      (fs::path(g_configs_dir) / "three_stage_30branch.json").string();
  const std::string base = "\"" + g_cli_path + "\" simulate --config \"" +
                           config + "\" --seed 777 --out ";
  const int rc1 =
      run_command(base + (scratch / "a").string() + " > /dev/null");
  const int rc2 =
      run_command(base + (scratch / "b").string() + " > /dev/null");
  if (rc1 != 0 || rc2 != 0) {
    return {false, "simulate exited with " + std::to_string(rc1) + " / " +
                       std::to_string(rc2)};
  }
  const std::string a = slurp(scratch / "a" / "trials.csv");
  const std::string b = slurp(scratch / "b" / "trials.csv");
  const bool pass = !a.empty() && a == b;
  return {pass, "two runs, " + std::to_string(a.size()) +
                    " bytes each, byte-identical: " + (pass ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <formicode-cli> <configs-dir>\n", argv[0]);
    return 2;
  }
  g_cli_path = argv[1];
  g_configs_dir = argv[2];

  struct Criterion {
    int number;
    const char* name;
    double budget_s;  // stated runtime budget; generous on any hardware
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "route count 126", 1.0, route_count},
      {2, "permutation test 1/210", 1.0, permutation_exact},
      {3, "binomial tail argument", 1.0, binomial_argument},
      {4, "vertical-trunk fit replication", 1.0, trunk_fit},
      {5, "anchor-distance correlation", 1.0, anchor_correlation},
      {6, "compression ordering", 1.0, compression_ordering},
      {7, "entropy bound and Kraft inequality", 5.0, entropy_bound},
      {8, "transmission-rate recovery", 2.0, rate_recovery},
      {9, "third-stage shape", 5.0, third_stage_shape},
      {10, "rank-sum exactness", 1.0, rank_sum_exact},
      {11, "CLI determinism", 2.0, cli_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = elapsed <= criterion.budget_s;
    const bool pass = outcome.pass && in_budget;
    failures += !pass;
    std::printf("%s criterion %2d (%s): %s [%.3f s%s]\n",
                pass ? "PASS" : "FAIL", criterion.number, criterion.name,
                outcome.detail.c_str(), elapsed,
                in_budget ? "" : ", over budget");
  }

  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
