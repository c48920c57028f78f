// Certification of designs, resolutions and latin square sets.
//
// Every report lists at most kReportLimit offending items; the total count
// of violations is always exact.
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ipbd/coverage.hpp"
#include "ipbd/model.hpp"

namespace ipbd {

inline constexpr std::size_t kReportLimit = 10;

struct Report {
  bool valid = true;
  std::size_t violation_count = 0;
  std::vector<std::string> details;  // first kReportLimit, human readable
  std::vector<PairViolation> pairs;  // first kReportLimit pair violations
  std::vector<std::size_t> blocks;   // first kReportLimit offending blocks

  explicit operator bool() const { return valid; }
  void add(std::string detail);
  [[nodiscard]] std::string summary() const;
};

using CoverageMatrix = PairCounts;

CoverageMatrix coverage_matrix(const Design& design, int workers = 0);

/// Block sizes, pair rule of the kind and, when declared, the
/// resolution. Uses the parallel kernel; `verify_design_serial` uses the
/// reference kernel and must agree with it.
Report verify_design(const Design& design, int workers = 0);
Report verify_design_serial(const Design& design);

/// Each class partitions all points (full) or the points outside the hole
/// (partial); every block lies in exactly one class.
Report verify_resolution(const Design& design);

struct UniformityReport {
  Report report;
  std::map<int, std::size_t> multiset;  // common block-size multiset
};

/// All classes share one block-size multiset.
UniformityReport verify_class_uniform(const Design& design);

/// The incomplete latin square axioms for every square of the set.
Report verify_latin(const LatinSquareSet& set);

/// Every pair of squares: each ordered symbol pair outside hole x hole
/// occurs exactly once among the common filled cells.
Report verify_orthogonal(const LatinSquareSet& set);

/// L(i, i) = i for every i outside the hole.
bool is_idempotent(const LatinSquareSet& set, std::size_t square);

using Edge = std::pair<Point, Point>;

struct PackingStats {
  long long blocks = 0;
  long long johnson = 0;
  long long deficiency = 0;
  std::vector<Edge> leave;
  std::vector<int> leave_degrees;  // one entry per non-isolated leave vertex, descending
};

/// Throws PreconditionError unless the design is a valid lambda = 1 packing
/// with a single block size.
PackingStats packing_stats(const Design& design);

struct CoveringStats {
  long long blocks = 0;
  long long schonheim = 0;
  std::vector<Edge> excess;  // pair repeated once per extra coverage
  std::vector<int> excess_degrees;
};

CoveringStats covering_stats(const Design& design);

/// An internally produced object failed certification.
class CertificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Throws CertificationError naming `what` unless the object verifies.
void require_valid(const Design& design, const std::string& what);
void require_valid(const LatinSquareSet& set, const std::string& what);

/// True when every block meets the IPBD hole.
bool blocks_meet_hole(const Design& design);

}  // namespace ipbd
