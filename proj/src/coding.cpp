#include "formicode/coding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace formicode {

namespace {

constexpr const char* kUnitToken = "|";

bool is_count_token(const std::string& token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

std::string CodeWord::joined() const {
  std::string out;
  for (const auto& token : description) out += token;
  return out;
}

MessageDistribution::MessageDistribution(std::map<int, double> probabilities)
    : probabilities_(std::move(probabilities)) {
  double sum = 0.0;
  for (const auto& [index, p] : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("probability for index " +
                                  std::to_string(index) +
                                  " must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) +
                                ", expected 1");
  }
}

MessageDistribution MessageDistribution::uniform(int first_index,
                                                 int last_index) {
  if (last_index < first_index) {
    throw std::invalid_argument("empty index range for uniform distribution");
  }
  const int n = last_index - first_index + 1;
  std::map<int, double> probs;
  for (int i = first_index; i <= last_index; ++i) probs[i] = 1.0 / n;
  return MessageDistribution(std::move(probs));
}

double MessageDistribution::prob(int index) const {
  auto it = probabilities_.find(index);
  return it == probabilities_.end() ? 0.0 : it->second;
}

std::vector<int> MessageDistribution::support() const {
  std::vector<int> indices;
  for (const auto& [index, p] : probabilities_) {
    if (p > 0.0) indices.push_back(index);
  }
  return indices;
}

TimeModel::TimeModel(double seconds_per_symbol, double overhead_seconds,
                     double noise_sd_seconds)
    : seconds_per_symbol(seconds_per_symbol),
      overhead_seconds(overhead_seconds),
      noise_sd_seconds(noise_sd_seconds) {
  if (!(seconds_per_symbol > 0.0)) {
    throw std::invalid_argument("seconds_per_symbol must be > 0");
  }
  if (!(noise_sd_seconds >= 0.0)) {
    throw std::invalid_argument("noise_sd_seconds must be >= 0");
  }
}

bool TimeModel::nonnegative_over(double min_length, double max_length) const {
  // Affine and increasing in length, so the minimum sits at min_length.
  return min_length <= max_length && predict(min_length) >= 0.0;
}

AnchorScheme::AnchorScheme(std::vector<int> anchors, double anchor_name_length)
    : anchors(std::move(anchors)), anchor_name_length(anchor_name_length) {
  if (this->anchors.empty()) {
    throw std::invalid_argument("anchor scheme needs at least one anchor");
  }
  if (this->anchors.front() < 1) {
    throw std::invalid_argument("anchors must be >= 1");
  }
  if (std::adjacent_find(this->anchors.begin(), this->anchors.end(),
                         std::greater_equal<>()) != this->anchors.end()) {
    throw std::invalid_argument("anchors must be strictly increasing");
  }
  if (!(anchor_name_length >= 0.0)) {
    throw std::invalid_argument("anchor_name_length must be >= 0");
  }
}

CodeWord unitary_encode(int index) {
  if (index < 1) {
    throw std::invalid_argument("unitary coding needs index >= 1, got " +
                                std::to_string(index));
  }
  CodeWord word;
  word.description.assign(static_cast<std::size_t>(index), kUnitToken);
  word.length = static_cast<double>(index);
  return word;
}

CodeWord compress_route(const Route& route) {
  const std::size_t n = route.size();
  if (n == 0) {
    throw std::invalid_argument("cannot compress an empty route");
  }
  // Smallest period dividing n; n itself always qualifies.
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) {
      repeats = route[i] == route[i - p];
    }
    if (repeats) {
      period = p;
      break;
    }
  }

  CodeWord word;
  if (period < n) {
    word.description.push_back(std::to_string(n / period));
    for (std::size_t i = 0; i < period; ++i) {
      word.description.emplace_back(1, route[i]);
    }
    word.length = 1.0 + static_cast<double>(period);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      word.description.emplace_back(1, route[i]);
    }
    word.length = static_cast<double>(n);
  }
  return word;
}

Route expand_route(const CodeWord& word) {
  if (word.description.empty()) return Route();
  std::size_t first_symbol = 0;
  std::size_t repeats = 1;
  if (is_count_token(word.description.front())) {
    repeats = std::stoull(word.description.front());
    first_symbol = 1;
  }
  std::string pattern;
  for (std::size_t i = first_symbol; i < word.description.size(); ++i) {
    pattern += word.description[i];
  }
  std::string turns;
  turns.reserve(pattern.size() * repeats);
  for (std::size_t i = 0; i < repeats; ++i) turns += pattern;
  return Route(std::move(turns));
}

double complexity_class(const Route& route) {
  if (route.empty()) return 0.0;
  return compress_route(route).length;
}

int select_anchor(int index, const AnchorScheme& scheme) {
  int best = scheme.anchors.front();
  int best_distance = std::abs(index - best);
  for (int anchor : scheme.anchors) {
    const int d = std::abs(index - anchor);
    if (d < best_distance) {  // ties keep the smaller (earlier) anchor
      best = anchor;
      best_distance = d;
    }
  }
  return best;
}

CodeWord anchor_encode(int index, const AnchorScheme& scheme) {
  if (index < 1) {
    throw std::invalid_argument("branch index must be >= 1, got " +
                                std::to_string(index));
  }
  const int anchor = select_anchor(index, scheme);
  const int offset = index - anchor;

  CodeWord word;
  word.description.push_back("A" + std::to_string(anchor));
  if (offset != 0) {
    word.description.push_back(offset > 0 ? "+" : "-");
    word.description.insert(word.description.end(),
                            static_cast<std::size_t>(std::abs(offset)),
                            kUnitToken);
  }
  // The sign rides along for free; only the name and the offset count.
  word.length = scheme.anchor_name_length + std::abs(offset);
  return word;
}

PrefixCode optimal_prefix_lengths(const MessageDistribution& dist) {
  const std::vector<int> support = dist.support();
  if (support.size() != dist.probabilities().size()) {
    throw std::invalid_argument(
        "optimal prefix code requires strictly positive probabilities");
  }

  PrefixCode code;
  if (support.size() < 2) {
    for (int index : support) code.lengths[index] = 0;
    code.degenerate = true;
    return code;
  }

  // Huffman merge. Node ids double as deterministic tie-breakers: leaves in
  // index order first, merged nodes in creation order after.
  struct Node {
    double weight;
    std::size_t id;
  };
  auto heavier = [](const Node& a, const Node& b) {
    return a.weight > b.weight || (a.weight == b.weight && a.id > b.id);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(heavier)> heap(heavier);

  std::vector<std::size_t> parent;
  parent.reserve(2 * support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    parent.push_back(i);  // self until merged
    heap.push({dist.prob(support[i]), i});
  }
  while (heap.size() > 1) {
    Node a = heap.top();
    heap.pop();
    Node b = heap.top();
    heap.pop();
    const std::size_t id = parent.size();
    parent.push_back(id);
    parent[a.id] = id;
    parent[b.id] = id;
    heap.push({a.weight + b.weight, id});
  }

  for (std::size_t i = 0; i < support.size(); ++i) {
    int depth = 0;
    for (std::size_t node = i; parent[node] != node; node = parent[node]) {
      ++depth;
    }
    code.lengths[support[i]] = depth;
  }
  return code;
}

CodeStats code_stats(const std::map<int, double>& lengths,
                     const MessageDistribution& dist) {
  CodeStats stats;
  for (const auto& [index, p] : dist.probabilities()) {
    if (p <= 0.0) continue;  // 0 * log 0 = 0
    stats.entropy_bits -= p * std::log2(p);
    auto it = lengths.find(index);
    if (it == lengths.end()) {
      throw std::invalid_argument("no code length for message index " +
                                  std::to_string(index));
    }
    stats.expected_length_bits += p * it->second;
  }
  return stats;
}

CodeStats code_stats(const std::map<int, int>& lengths,
                     const MessageDistribution& dist) {
  std::map<int, double> as_double;
  for (const auto& [index, l] : lengths) as_double[index] = l;
  return code_stats(as_double, dist);
}

double transmission_time(const CodeWord& word, const TimeModel& model,
                         std::mt19937_64* rng) {
  double t = model.predict(word.length);
  if (rng != nullptr) {
    if (model.noise_sd_seconds > 0.0) {
      std::normal_distribution<double> noise(0.0, model.noise_sd_seconds);
      t += noise(*rng);
    }
    t = std::max(t, 1.0);  // an informative contact takes at least a second
  }
  return t;
}

}  // namespace formicode
