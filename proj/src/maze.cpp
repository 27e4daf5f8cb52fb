#include "formicode/maze.hpp"

#include <cmath>
#include <stdexcept>

namespace formicode {

Route::Route(std::string turns) : turns_(std::move(turns)) {
  for (char c : turns_) {
    if (c != 'L' && c != 'R') {
      throw std::invalid_argument(
          std::string("route may contain only L and R, got '") + c + "'");
    }
  }
}

BinaryTreeMaze::BinaryTreeMaze(int depth, std::uint64_t goal_leaf)
    : depth(depth), goal_leaf(goal_leaf) {
  if (depth < 1 || depth > 63) {
    throw std::invalid_argument("tree depth must be in [1, 63], got " +
                                std::to_string(depth));
  }
  if (goal_leaf >= leaf_count()) {
    throw std::invalid_argument("goal leaf " + std::to_string(goal_leaf) +
                                " out of range for depth " +
                                std::to_string(depth));
  }
}

const char* to_string(CombLayout layout) {
  switch (layout) {
    case CombLayout::horizontal: return "horizontal";
    case CombLayout::vertical: return "vertical";
    case CombLayout::circle: return "circle";
  }
  throw std::logic_error("unreachable comb layout");
}

CombLayout comb_layout_from_string(std::string_view name) {
  if (name == "horizontal") return CombLayout::horizontal;
  if (name == "vertical") return CombLayout::vertical;
  if (name == "circle") return CombLayout::circle;
  throw std::invalid_argument("unknown comb layout '" + std::string(name) +
                              "'");
}

CombMaze::CombMaze(CombLayout layout, int branch_count, int goal_branch)
    : layout(layout), branch_count(branch_count), goal_branch(goal_branch) {
  if (branch_count < 2) {
    throw std::invalid_argument("comb needs at least 2 branches, got " +
                                std::to_string(branch_count));
  }
  if (goal_branch < 1 || goal_branch > branch_count) {
    throw std::invalid_argument("goal branch " + std::to_string(goal_branch) +
                                " out of range [1, " +
                                std::to_string(branch_count) + "]");
  }
}

Route leaf_to_route(const BinaryTreeMaze& maze) {
  std::string turns;
  turns.reserve(static_cast<std::size_t>(maze.depth));
  for (int fork = maze.depth - 1; fork >= 0; --fork) {
    turns.push_back((maze.goal_leaf >> fork) & 1u ? 'R' : 'L');
  }
  return Route(std::move(turns));
}

std::uint64_t route_to_leaf(const Route& route) {
  std::uint64_t leaf = 0;
  for (char turn : route) {
    leaf = (leaf << 1) | (turn == 'R' ? 1u : 0u);
  }
  return leaf;
}

double information_bits(const BinaryTreeMaze& maze) {
  return static_cast<double>(maze.depth);
}

double information_bits(const CombMaze& maze) {
  return std::log2(static_cast<double>(maze.branch_count));
}

std::uint64_t total_routes(int max_depth) {
  if (max_depth < 1) {
    throw std::invalid_argument("max_depth must be >= 1, got " +
                                std::to_string(max_depth));
  }
  if (max_depth > 63) {
    throw std::overflow_error("total_routes overflows 64 bits for max_depth " +
                              std::to_string(max_depth));
  }
  std::uint64_t total = 0;
  for (int i = 1; i <= max_depth; ++i) {
    total += std::uint64_t{1} << i;  // i <= 63 and the sum is 2^(d+1)-2
  }
  return total;
}

BigRational chance_probability(const BinaryTreeMaze& maze) {
  return BigRational(1, BigInt(1) << maze.depth);
}

BigRational chance_probability(const CombMaze& maze) {
  return BigRational(1, maze.branch_count);
}

}  // namespace formicode
