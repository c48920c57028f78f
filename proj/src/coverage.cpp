#include "ipbd/coverage.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ipbd {

PairCounts::PairCounts(int n_points)
    : n_(n_points),
      counts_(n_points > 1 ? static_cast<std::size_t>(n_points) * (n_points - 1) / 2 : 0, 0) {}

int default_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

PairSpec::PairSpec(const Design& d) : lambda_(d.lambda) {
  const auto n = static_cast<std::size_t>(d.n_points);
  auto label = [n](const Partition& parts, int fill) {
    std::vector<int> out(n, fill);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Point p : parts[i]) out[p] = static_cast<int>(i);
    }
    return out;
  };
  if (const auto* ip = std::get_if<IpbdKind>(&d.kind)) {
    mode_ = Mode::hole;
    group_.assign(n, 0);
    for (Point p : ip->hole) group_[p] = 1;
  } else if (const auto* g = std::get_if<GddKind>(&d.kind)) {
    mode_ = Mode::groups;
    group_ = label(g->groups, -1);
  } else if (const auto* td = std::get_if<TdKind>(&d.kind)) {
    mode_ = Mode::groups;
    group_ = label(td->groups, -1);
  } else if (const auto* ig = std::get_if<IgddKind>(&d.kind)) {
    mode_ = Mode::igdd;
    group_ = label(ig->groups, -1);
    hole_ = label(ig->holes, -1);
  } else if (const auto* hg = std::get_if<HgddKind>(&d.kind)) {
    mode_ = Mode::hgdd;
    group_ = label(hg->groups, -1);
    hole_ = label(hg->holes, -1);
  } else if (std::holds_alternative<PackingKind>(d.kind)) {
    mode_ = Mode::packing;
  } else if (std::holds_alternative<CoveringKind>(d.kind)) {
    mode_ = Mode::covering;
  }
}

PairRule PairSpec::rule(Point x, Point y) const {
  switch (mode_) {
    case Mode::plain:
      return PairRule::exact;
    case Mode::hole:
      return group_[x] && group_[y] ? PairRule::forbidden : PairRule::exact;
    case Mode::groups:
      return group_[x] == group_[y] ? PairRule::forbidden : PairRule::exact;
    case Mode::igdd:
      if (group_[x] == group_[y]) return PairRule::forbidden;
      return hole_[x] >= 0 && hole_[y] >= 0 ? PairRule::forbidden : PairRule::exact;
    case Mode::hgdd:
      return group_[x] == group_[y] || hole_[x] == hole_[y] ? PairRule::forbidden
                                                            : PairRule::exact;
    case Mode::packing:
      return PairRule::at_most;
    case Mode::covering:
      return PairRule::at_least;
  }
  return PairRule::exact;
}

bool PairSpec::satisfied(Point x, Point y, int count) const {
  switch (rule(x, y)) {
    case PairRule::exact:
      return count == lambda_;
    case PairRule::forbidden:
      return count == 0;
    case PairRule::at_most:
      return count <= lambda_;
    case PairRule::at_least:
      return count >= lambda_;
  }
  return false;
}

PairCounts count_pairs_serial(int n_points, std::span<const Block> blocks) {
  PairCounts counts(n_points);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) counts.bump(PairCounts::rank(b[i], b[j]));
    }
  }
  return counts;
}

namespace {

// Compressed point -> block incidence.
struct Incidence {
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> block;
};

Incidence incidence(int n_points, std::span<const Block> blocks) {
  Incidence inc;
  inc.offset.assign(static_cast<std::size_t>(n_points) + 1, 0);
  for (const auto& b : blocks) {
    for (Point p : b) ++inc.offset[static_cast<std::size_t>(p) + 1];
  }
  for (std::size_t i = 1; i < inc.offset.size(); ++i) inc.offset[i] += inc.offset[i - 1];
  inc.block.resize(inc.offset.back());
  std::vector<std::size_t> fill(inc.offset.begin(), inc.offset.end() - 1);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (Point p : blocks[bi]) inc.block[fill[p]++] = static_cast<std::uint32_t>(bi);
  }
  return inc;
}

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

void fill_row(Point y, const Incidence& inc, std::span<const Block> blocks, PairCounts& counts) {
  for (std::size_t k = inc.offset[y]; k < inc.offset[y + 1]; ++k) {
    const auto& b = blocks[inc.block[k]];
    // Blocks need not be sorted, so every member is inspected.
    for (Point x : b) {
      if (x < y) counts.bump(PairCounts::rank(x, y));
    }
  }
}

}  // namespace

PairCounts count_pairs_parallel(int n_points, std::span<const Block> blocks, int workers) {
  PairCounts counts(n_points);
  const Incidence inc = incidence(n_points, blocks);
  const int threads = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (Point y = 1; y < n_points; ++y) fill_row(y, inc, blocks, counts);
  (void)threads;
  return counts;
}

CoverageScan scan_serial(const Design& design, std::size_t limit) {
  CoverageScan scan;
  scan.counts = count_pairs_serial(design.n_points, design.blocks);
  const PairSpec spec(design);
  for (Point y = 1; y < design.n_points; ++y) {
    for (Point x = 0; x < y; ++x) {
      const int c = scan.counts.at(x, y);
      if (spec.satisfied(x, y, c)) continue;
      if (scan.violations.size() < limit) scan.violations.push_back({x, y, c, spec.rule(x, y)});
      ++scan.violation_count;
    }
  }
  return scan;
}

CoverageScan scan_parallel(const Design& design, std::size_t limit, int workers) {
  const int n = design.n_points;
  CoverageScan scan;
  scan.counts = PairCounts(n);
  const PairSpec spec(design);
  const Incidence inc = incidence(n, design.blocks);
  std::vector<std::vector<PairViolation>> row_bad(static_cast<std::size_t>(std::max(n, 1)));
  std::vector<std::size_t> row_total(row_bad.size(), 0);
  const int threads = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (Point y = 1; y < n; ++y) {
    fill_row(y, inc, design.blocks, scan.counts);
    for (Point x = 0; x < y; ++x) {
      const int c = scan.counts.at(x, y);
      if (spec.satisfied(x, y, c)) continue;
      if (row_bad[y].size() < limit) row_bad[y].push_back({x, y, c, spec.rule(x, y)});
      ++row_total[y];
    }
  }
  (void)threads;
  for (Point y = 1; y < n; ++y) {
    scan.violation_count += row_total[y];
    for (const auto& v : row_bad[y]) {
      if (scan.violations.size() >= limit) break;
      scan.violations.push_back(v);
    }
  }
  return scan;
}

}  // namespace ipbd
