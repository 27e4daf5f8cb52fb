#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "formicode/maze.hpp"

namespace formicode {

// A message as transmitted: inspectable tokens plus a length in abstract
// symbol units. Length drives transmission time; the tokens are what a
// decoder (or a test) looks at.
struct CodeWord {
  std::vector<std::string> description;
  double length = 0.0;

  std::string joined() const;  // tokens concatenated, e.g. "8L"
};

// Probability distribution over message indices (branch numbers or leaf
// indices). Probabilities must be nonnegative and sum to 1 within 1e-12.
class MessageDistribution {
 public:
  explicit MessageDistribution(std::map<int, double> probabilities);

  static MessageDistribution uniform(int first_index, int last_index);

  const std::map<int, double>& probabilities() const { return probabilities_; }
  double prob(int index) const;
  std::vector<int> support() const;  // indices with p > 0

 private:
  std::map<int, double> probabilities_;
};

// Contact duration t = seconds_per_symbol * length + overhead_seconds, with
// optional Gaussian noise. Fitted overheads are often negative, so affine
// predictions can dip below zero at short lengths; noisy draws are floored
// at 1 s (see transmission_time), and nonnegative_over() lets a caller check
// a declared operating range.
struct TimeModel {
  double seconds_per_symbol;  // > 0
  double overhead_seconds;
  double noise_sd_seconds;    // >= 0

  TimeModel(double seconds_per_symbol, double overhead_seconds,
            double noise_sd_seconds = 0.0);

  double predict(double length) const {
    return seconds_per_symbol * length + overhead_seconds;
  }
  bool nonnegative_over(double min_length, double max_length) const;
};

// Two (or more) distinguished branches with short names; other branches are
// coded as nearest-anchor plus an offset.
struct AnchorScheme {
  std::vector<int> anchors;        // strictly increasing, all >= 1
  double anchor_name_length;       // symbol units per anchor name

  explicit AnchorScheme(std::vector<int> anchors,
                        double anchor_name_length = 1.0);
};

struct CodeStats {
  double entropy_bits = 0.0;
  double expected_length_bits = 0.0;
};

struct PrefixCode {
  std::map<int, int> lengths;  // index -> code length in bits
  bool degenerate = false;     // fewer than two messages
};

// Length-i message for branch index i (one tally token per unit).
CodeWord unitary_encode(int index);

// Shortest period-repetition description of a route: if the route is k >= 2
// repetitions of its first P symbols, the description is a repeat count plus
// the P-symbol pattern (length 1 + P); otherwise the raw route (length n).
CodeWord compress_route(const Route& route);

// Inverse of compress_route; also accepts raw route words.
Route expand_route(const CodeWord& word);

// Description length of the compressed form; 0 for the empty route.
double complexity_class(const Route& route);

// Nearest anchor to `index`; equidistant ties resolve to the smaller anchor.
int select_anchor(int index, const AnchorScheme& scheme);

// Anchor name plus sign plus |index - anchor| unit tokens. The sign costs no
// length; a zero offset is just the name.
CodeWord anchor_encode(int index, const AnchorScheme& scheme);

// Huffman code lengths for the distribution (all probabilities positive).
// A support smaller than two yields a zero-length code flagged degenerate.
PrefixCode optimal_prefix_lengths(const MessageDistribution& dist);

// Entropy of the distribution and expected code length under `lengths`,
// which must cover the distribution's support. Zero-probability entries
// contribute nothing to the entropy.
CodeStats code_stats(const std::map<int, double>& lengths,
                     const MessageDistribution& dist);
CodeStats code_stats(const std::map<int, int>& lengths,
                     const MessageDistribution& dist);

// Deterministic part a*length + b; with an engine, adds Gaussian noise of
// sd noise_sd_seconds and floors the result at 1 s.
double transmission_time(const CodeWord& word, const TimeModel& model,
                         std::mt19937_64* rng = nullptr);

}  // namespace formicode
