// Exact backtracking search for designs with lambda = 1.
//
// The residual graph H holds the required pairs not yet covered. Each node
// branches on the lexicographically smallest edge {x, y} of H; candidate
// blocks are the cliques of H through x and y with sizes in K, generated in
// lexicographic order. A subtree is pruned when
//   - a touched vertex has a degree that is not a sum of values k-1,
//   - the neighbourhood of a touched vertex does not split into disjoint
//     cliques with sizes k-1 for k in K,
//   - the remaining edge count is not a sum of values k(k-1)/2, or
//   - the residual graph is a memoized failure.
// Twin reduction: vertices a, b of N(x) & N(y) with equal neighbourhoods
// outside {a, b} are interchangeable, so a candidate must meet each twin
// class in an initial segment of it.
//
// NONEXISTENT is reported only after the whole tree is exhausted.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "ipbd/model.hpp"

namespace ipbd {

inline constexpr int kDefaultPointCap = 24;
inline constexpr int kMaxPointCap = 64;
inline constexpr long long kDefaultNodeBudget = 10'000'000;
inline constexpr double kDefaultTimeBudget = 60.0;

enum class SymmetryMode { none, first_level, all_levels };

struct SearchProblem {
  int n_points = 0;
  DesignKind kind = PbdKind{};
  BlockSizeSet K;
  bool require_resolution = false;
  std::optional<std::map<int, std::size_t>> class_multiset;  // per-class block sizes
  long long node_budget = kDefaultNodeBudget;
  double time_budget = kDefaultTimeBudget;  // seconds
  int point_cap = kDefaultPointCap;
  int workers = 1;
  SymmetryMode symmetry = SymmetryMode::all_levels;
  bool memoize = true;
  /// Count every solution instead of stopping at the first. Disables the
  /// symmetry reduction and the memo so that counts are exact.
  bool enumerate_all = false;
};

enum class SearchStatus { found, nonexistent, budget_exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::nonexistent;
  std::optional<Design> design;
  long long nodes = 0;
  double seconds = 0.0;
  std::uint64_t solutions = 0;  // enumerate_all mode
  std::string message;
};

std::string to_string(SearchStatus status);

/// Throws PreconditionError when the point count exceeds the cap, lambda
/// is not 1, the kind has no exact pair rule (packing/covering)
/// or a resolution with partial classes would be needed.
SearchResult search(const SearchProblem& problem);

/// Convenience builders for common problems.
SearchProblem ipbd_problem(int v, int w, const BlockSizeSet& K);
SearchProblem gdd_problem(std::span<const int> group_sizes, const BlockSizeSet& K);
SearchProblem igdd_problem(int g, int h, int u, const BlockSizeSet& K);
SearchProblem hgdd_problem(int u, int h, int m, const BlockSizeSet& K);

}  // namespace ipbd
