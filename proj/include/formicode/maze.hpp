#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "formicode/exact.hpp"

namespace formicode {

// A turn sequence over the two-letter alphabet {L, R}.
class Route {
 public:
  Route() = default;
  explicit Route(std::string turns);  // rejects characters outside {L, R}

  const std::string& turns() const { return turns_; }
  std::size_t size() const { return turns_.size(); }
  bool empty() const { return turns_.empty(); }
  char operator[](std::size_t i) const { return turns_[i]; }

  auto begin() const { return turns_.begin(); }
  auto end() const { return turns_.end(); }

  bool operator==(const Route&) const = default;

 private:
  std::string turns_;
};

// Maze with `depth` sequential binary forks; the goal sits on one of the
// 2^depth leaves. Leaf indices follow a fixed convention shared by every
// module: L = binary 0, most significant fork first.
struct BinaryTreeMaze {
  int depth;
  std::uint64_t goal_leaf;

  BinaryTreeMaze(int depth, std::uint64_t goal_leaf);

  std::uint64_t leaf_count() const { return std::uint64_t{1} << depth; }
};

enum class CombLayout { horizontal, vertical, circle };

const char* to_string(CombLayout layout);
CombLayout comb_layout_from_string(std::string_view name);

// Trunk with `branch_count` equally spaced branches numbered from 1.
// Layout and physical dimensions are descriptive metadata only; they never
// enter a time computation.
struct CombMaze {
  CombLayout layout;
  int branch_count;
  int goal_branch;
  std::optional<double> branch_length_cm;
  std::optional<double> branch_spacing_cm;

  CombMaze(CombLayout layout, int branch_count, int goal_branch);
};

// Bijection between goal leaves and turn sequences (depth turns, L = 0,
// most significant fork first).
Route leaf_to_route(const BinaryTreeMaze& maze);
std::uint64_t route_to_leaf(const Route& route);

// Information needed to locate the goal: tree -> depth, comb -> log2(count).
double information_bits(const BinaryTreeMaze& maze);
double information_bits(const CombMaze& maze);

// Sum over i = 1..max_depth of 2^i, exact. Throws std::overflow_error when
// the sum does not fit in 64 bits (max_depth > 63).
std::uint64_t total_routes(int max_depth);

// Probability of reaching the goal by a uniformly random walk/choice.
BigRational chance_probability(const BinaryTreeMaze& maze);
BigRational chance_probability(const CombMaze& maze);

}  // namespace formicode
