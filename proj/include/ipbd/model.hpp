// Core data model for block designs and latin square sets.
//
// Conventions used throughout the library:
//   - Points are the contiguous integers 0..n_points-1.
//   - Blocks are sorted point lists.
//   - After normalize(), an IPBD hole (or the distinguished group of a
//     GDD of type g^n h^1) occupies the trailing index range, the groups
//     of a GDD/TD/IGDD are consecutive ranges, IGDD holes are the trailing
//     points of their group and HGDD points are laid out row-major by
//     (group, hole, offset).
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ipbd {

using Point = int;
using Block = std::vector<Point>;

/// Malformed input: overlapping groups, out-of-range or duplicated points.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with parameters outside its contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite set K of block sizes together with its divisibility moduli.
///
/// alpha = gcd{k-1}, beta = gcd{k(k-1)}, gamma = beta/alpha.
class BlockSizeSet {
 public:
  BlockSizeSet() = default;

  /// Throws std::invalid_argument for an empty set or a size below 2.
  static BlockSizeSet from(std::vector<int> sizes);

  /// Parses "3,4,5", "3..7" or a mix such as "3,5..7".
  static BlockSizeSet parse(const std::string& text);

  [[nodiscard]] std::span<const int> sizes() const { return sizes_; }
  [[nodiscard]] bool empty() const { return sizes_.empty(); }
  [[nodiscard]] bool contains(int k) const;
  [[nodiscard]] int alpha() const { return alpha_; }
  [[nodiscard]] int beta() const { return beta_; }
  [[nodiscard]] int gamma() const { return gamma_; }
  [[nodiscard]] int k_min() const { return sizes_.empty() ? 0 : sizes_.front(); }
  [[nodiscard]] int k_max() const { return sizes_.empty() ? 0 : sizes_.back(); }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BlockSizeSet& a, const BlockSizeSet& b) {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<int> sizes_;
  int alpha_ = 0;
  int beta_ = 0;
  int gamma_ = 0;
};

using PointSet = std::vector<Point>;
using Partition = std::vector<PointSet>;

struct PbdKind {};
struct IpbdKind {
  PointSet hole;
};
struct GddKind {
  Partition groups;
};
struct IgddKind {
  Partition groups;
  Partition holes;  // holes[i] is a subset of groups[i]
};
struct HgddKind {
  int u = 0;  // number of groups (rows)
  int h = 0;  // cell size
  int m = 0;  // number of holes (columns)
  Partition groups;
  Partition holes;
};
struct TdKind {
  int k = 0;
  int n = 0;
  Partition groups;
};
struct PackingKind {};
struct CoveringKind {};

using DesignKind = std::variant<PbdKind, IpbdKind, GddKind, IgddKind, HgddKind,
                                TdKind, PackingKind, CoveringKind>;

enum class ClassKind { full, partial };

struct ParallelClass {
  std::vector<std::size_t> blocks;
  ClassKind kind = ClassKind::full;
};

struct Resolution {
  std::vector<ParallelClass> classes;
};

struct Design {
  int n_points = 0;
  std::vector<Block> blocks;
  DesignKind kind = PbdKind{};
  BlockSizeSet block_sizes;
  int lambda = 1;
  std::optional<Resolution> resolution;
  std::string provenance;
};

inline constexpr int kEmptyCell = -1;

/// One or more (incomplete) latin squares of side n sharing a hole.
/// Each square is stored row-major; cells in hole x hole are kEmptyCell
/// whenever m >= 2.
struct LatinSquareSet {
  int n = 0;
  int m = 0;
  PointSet hole;
  std::vector<std::vector<int>> squares;

  [[nodiscard]] int at(std::size_t square, int row, int col) const {
    return squares[square][static_cast<std::size_t>(row) * n + col];
  }
  [[nodiscard]] std::size_t count() const { return squares.size(); }
};

// Layout helpers producing the normalized conventions above.
Partition consecutive_groups(std::span<const int> sizes);
PointSet trailing_range(int n_points, int count);
HgddKind hgdd_layout(int u, int h, int m);
TdKind td_layout(int k, int n);

/// Lowercase tag used in the interchange format ("ipbd", "gdd", ...).
std::string kind_tag(const DesignKind& kind);

/// Group sizes of a GDD-like kind, in group order. PBD counts as 1^v and
/// an IPBD((v;w)) as 1^(v-w) w^1. Empty for kinds without a group
/// partition (IGDD, HGDD, packing, covering).
std::vector<int> group_sizes(const Design& design);

/// The hole of an IPBD, or the empty set for other kinds.
PointSet hole_points(const Design& design);

/// Multiset of block sizes, as size -> multiplicity.
std::map<int, std::size_t> block_size_profile(const Design& design);
std::map<int, std::size_t> block_size_profile(std::span<const Block> blocks);

/// Checks ranges, duplicates and partitions; throws StructuralError.
void check_structure(const Design& design);

/// Relabels points into the normalized layout and sorts blocks.
/// Returns the relabeled design; idempotent.
Design normalize(const Design& design);

/// Applies a point permutation (perm[old] = new) to blocks and kind.
/// Blocks are re-sorted internally but block order is preserved.
Design relabel(const Design& design, std::span<const Point> perm);

}  // namespace ipbd
