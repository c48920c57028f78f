// Pair-coverage kernels.
//
// Counts live in a triangular byte array indexed by rank(x, y) =
// y(y-1)/2 + x for x < y and saturate at 255, so pair rules with
// lambda <= 254 are checked exactly.
//
// Two implementations are kept: a serial reference that walks blocks, and
// an OpenMP kernel in which row y owns the contiguous rank segment of all
// pairs (x, y), x < y, and fills it from a point-to-block incidence index.
// Rows are disjoint, so the parallel kernel needs no atomics, and the
// per-row violation lists are concatenated in row order, making the result
// identical to the serial one.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ipbd/model.hpp"

namespace ipbd {

inline constexpr int kMaxPairCount = 255;

class PairCounts {
 public:
  PairCounts() = default;
  explicit PairCounts(int n_points);

  [[nodiscard]] int n_points() const { return n_; }
  [[nodiscard]] static std::size_t rank(Point x, Point y) {
    if (x > y) std::swap(x, y);
    return static_cast<std::size_t>(y) * (y - 1) / 2 + x;
  }
  [[nodiscard]] int at(Point x, Point y) const { return counts_[rank(x, y)]; }
  void bump(std::size_t r) {
    if (counts_[r] < kMaxPairCount) ++counts_[r];
  }
  [[nodiscard]] std::span<const std::uint8_t> raw() const { return counts_; }
  std::span<std::uint8_t> raw() { return counts_; }

  friend bool operator==(const PairCounts&, const PairCounts&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> counts_;
};

/// What a pair must satisfy, relative to the design's lambda.
enum class PairRule : std::uint8_t { exact, forbidden, at_most, at_least };

/// Per-point labels describing the pair rule of a design kind.
class PairSpec {
 public:
  explicit PairSpec(const Design& design);

  [[nodiscard]] PairRule rule(Point x, Point y) const;
  [[nodiscard]] int lambda() const { return lambda_; }
  [[nodiscard]] bool satisfied(Point x, Point y, int count) const;

 private:
  enum class Mode : std::uint8_t { plain, hole, groups, igdd, hgdd, packing, covering };
  Mode mode_ = Mode::plain;
  int lambda_ = 1;
  std::vector<int> group_;  // group index, or 1 for hole points in Mode::hole
  std::vector<int> hole_;   // hole index, or -1
};

struct PairViolation {
  Point x = 0;
  Point y = 0;
  int count = 0;
  PairRule rule = PairRule::exact;
};

struct CoverageScan {
  PairCounts counts;
  std::size_t violation_count = 0;
  std::vector<PairViolation> violations;  // first `limit`, in rank order
};

PairCounts count_pairs_serial(int n_points, std::span<const Block> blocks);
PairCounts count_pairs_parallel(int n_points, std::span<const Block> blocks, int workers = 0);

/// Counts pairs and lists pairs that miss their rule.
CoverageScan scan_serial(const Design& design, std::size_t limit = 10);
CoverageScan scan_parallel(const Design& design, std::size_t limit = 10, int workers = 0);

/// Number of OpenMP threads used when `workers` is 0.
int default_workers();

}  // namespace ipbd
