#include "ipbd/verify.hpp"

#include <algorithm>
#include <sstream>

#include "ipbd/arithmetic.hpp"

namespace ipbd {

void Report::add(std::string detail) {
  valid = false;
  if (details.size() < kReportLimit) details.push_back(std::move(detail));
  ++violation_count;
}

std::string Report::summary() const {
  if (valid) return "valid";
  std::ostringstream out;
  out << "invalid: " << violation_count << " violation" << (violation_count == 1 ? "" : "s");
  for (const auto& d : details) out << "\n  " << d;
  if (violation_count > details.size()) out << "\n  ...";
  return out.str();
}

CoverageMatrix coverage_matrix(const Design& design, int workers) {
  return count_pairs_parallel(design.n_points, design.blocks, workers);
}

namespace {

const char* rule_text(PairRule r) {
  switch (r) {
    case PairRule::exact:
      return "exactly lambda";
    case PairRule::forbidden:
      return "0";
    case PairRule::at_most:
      return "at most lambda";
    case PairRule::at_least:
      return "at least lambda";
  }
  return "";
}

Report verify_with(const Design& design, const CoverageScan* scan_in, bool serial, int workers) {
  Report rep;
  try {
    check_structure(design);
  } catch (const StructuralError& e) {
    rep.add(std::string("structure: ") + e.what());
    return rep;
  }
  if (design.lambda > kMaxPairCount - 1) {
    rep.add("lambda above the supported limit of " + std::to_string(kMaxPairCount - 1));
    return rep;
  }
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    const int s = static_cast<int>(design.blocks[i].size());
    if (!design.block_sizes.contains(s)) {
      if (rep.blocks.size() < kReportLimit) rep.blocks.push_back(i);
      rep.add("block " + std::to_string(i) + " has size " + std::to_string(s) + " not in K = " +
              design.block_sizes.to_string());
    }
  }
  CoverageScan local;
  if (!scan_in) {
    local = serial ? scan_serial(design, kReportLimit) : scan_parallel(design, kReportLimit, workers);
    scan_in = &local;
  }
  for (const auto& v : scan_in->violations) {
    rep.pairs.push_back(v);
    if (rep.details.size() < kReportLimit) {
      rep.details.push_back("pair {" + std::to_string(v.x) + "," + std::to_string(v.y) +
                            "} covered " + std::to_string(v.count) + " times, needs " +
                            rule_text(v.rule));
    }
  }
  if (scan_in->violation_count) {
    rep.valid = false;
    rep.violation_count += scan_in->violation_count;
  }
  if (design.resolution) {
    Report res = verify_resolution(design);
    if (!res.valid) {
      rep.valid = false;
      rep.violation_count += res.violation_count;
      for (auto& d : res.details) {
        if (rep.details.size() < kReportLimit) rep.details.push_back("resolution: " + d);
      }
    }
  }
  return rep;
}

}  // namespace

Report verify_design(const Design& design, int workers) {
  return verify_with(design, nullptr, false, workers);
}

Report verify_design_serial(const Design& design) { return verify_with(design, nullptr, true, 1); }

Report verify_resolution(const Design& design) {
  Report rep;
  if (!design.resolution) {
    rep.add("no resolution declared");
    return rep;
  }
  const auto n = static_cast<std::size_t>(design.n_points);
  std::vector<char> in_hole(n, 0);
  for (Point p : hole_points(design)) in_hole[p] = 1;
  std::vector<int> uses(design.blocks.size(), 0);
  const auto& classes = design.resolution->classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<int> hits(n, 0);
    for (std::size_t b : classes[c].blocks) {
      if (b >= design.blocks.size()) {
        rep.add("class " + std::to_string(c) + " names missing block " + std::to_string(b));
        continue;
      }
      ++uses[b];
      for (Point p : design.blocks[b]) ++hits[p];
    }
    const bool full = classes[c].kind == ClassKind::full;
    for (std::size_t p = 0; p < n; ++p) {
      const int want = full || !in_hole[p] ? 1 : 0;
      if (hits[p] != want) {
        rep.add("class " + std::to_string(c) + " covers point " + std::to_string(p) + " " +
                std::to_string(hits[p]) + " times, needs " + std::to_string(want));
      }
    }
  }
  for (std::size_t b = 0; b < uses.size(); ++b) {
    if (uses[b] != 1) {
      if (rep.blocks.size() < kReportLimit) rep.blocks.push_back(b);
      rep.add("block " + std::to_string(b) + " lies in " + std::to_string(uses[b]) + " classes");
    }
  }
  return rep;
}

UniformityReport verify_class_uniform(const Design& design) {
  UniformityReport out;
  out.report = verify_resolution(design);
  if (!design.resolution) return out;
  const auto& classes = design.resolution->classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::map<int, std::size_t> ms;
    for (std::size_t b : classes[c].blocks) {
      if (b < design.blocks.size()) ++ms[static_cast<int>(design.blocks[b].size())];
    }
    if (c == 0) {
      out.multiset = ms;
    } else if (ms != out.multiset) {
      out.report.add("class " + std::to_string(c) + " has a different block-size multiset");
    }
  }
  return out;
}

Report verify_latin(const LatinSquareSet& set) {
  Report rep;
  const int n = set.n, m = set.m;
  std::vector<char> in_hole(static_cast<std::size_t>(n), 0);
  for (Point p : set.hole) {
    if (p < 0 || p >= n) {
      rep.add("hole symbol out of range");
      return rep;
    }
    in_hole[p] = 1;
  }
  // A hole of size 0 or 1 imposes nothing: the square is an ordinary one.
  const bool incomplete = m >= 2;
  auto tag = [](std::size_t s, int i, int j) {
    return "square " + std::to_string(s) + " cell (" + std::to_string(i) + "," +
           std::to_string(j) + ")";
  };
  for (std::size_t s = 0; s < set.count(); ++s) {
    if (set.squares[s].size() != static_cast<std::size_t>(n) * n) {
      rep.add("square " + std::to_string(s) + " does not have n*n cells");
      continue;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int c = set.at(s, i, j);
        const bool hole_cell = incomplete && in_hole[i] && in_hole[j];
        if (hole_cell && c != kEmptyCell) rep.add(tag(s, i, j) + " in hole x hole is filled");
        if (!hole_cell && c == kEmptyCell) rep.add(tag(s, i, j) + " outside hole x hole is empty");
        if (c != kEmptyCell && (c < 0 || c >= n)) rep.add(tag(s, i, j) + " symbol out of range");
        if (incomplete && c != kEmptyCell && c >= 0 && c < n && in_hole[c] &&
            (in_hole[i] || in_hole[j])) {
          rep.add(tag(s, i, j) + " carries hole symbol " + std::to_string(c) +
                  " in a hole row or column");
        }
      }
    }
    for (int line = 0; line < n; ++line) {
      std::vector<int> row_seen(static_cast<std::size_t>(n), 0), col_seen(row_seen);
      for (int k = 0; k < n; ++k) {
        const int r = set.at(s, line, k), c = set.at(s, k, line);
        if (r >= 0 && r < n && ++row_seen[r] == 2) {
          rep.add("square " + std::to_string(s) + " row " + std::to_string(line) +
                  " repeats symbol " + std::to_string(r));
        }
        if (c >= 0 && c < n && ++col_seen[c] == 2) {
          rep.add("square " + std::to_string(s) + " column " + std::to_string(line) +
                  " repeats symbol " + std::to_string(c));
        }
      }
    }
  }
  return rep;
}

Report verify_orthogonal(const LatinSquareSet& set) {
  Report rep = verify_latin(set);
  if (!rep.valid) return rep;
  const int n = set.n;
  std::vector<char> in_hole(static_cast<std::size_t>(n), 0);
  if (set.m >= 2) {
    for (Point p : set.hole) in_hole[p] = 1;
  }
  for (std::size_t a = 0; a < set.count(); ++a) {
    for (std::size_t b = a + 1; b < set.count(); ++b) {
      std::vector<int> seen(static_cast<std::size_t>(n) * n, 0);
      std::size_t filled = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const int x = set.at(a, i, j), y = set.at(b, i, j);
          if (x == kEmptyCell || y == kEmptyCell) continue;
          ++filled;
          const std::string where = "squares " + std::to_string(a) + "," + std::to_string(b);
          if (in_hole[x] && in_hole[y]) {
            rep.add(where + ": pair (" + std::to_string(x) + "," + std::to_string(y) +
                    ") lies in hole x hole");
          }
          if (++seen[static_cast<std::size_t>(x) * n + y] == 2) {
            rep.add(where + ": pair (" + std::to_string(x) + "," + std::to_string(y) +
                    ") repeats");
          }
        }
      }
      const std::size_t hm = set.m >= 2 ? static_cast<std::size_t>(set.m) : 0;
      const std::size_t want = static_cast<std::size_t>(n) * n - hm * hm;
      if (filled != want) {
        rep.add("squares " + std::to_string(a) + "," + std::to_string(b) + " share " +
                std::to_string(filled) + " filled cells, need " + std::to_string(want));
      }
    }
  }
  return rep;
}

bool is_idempotent(const LatinSquareSet& set, std::size_t square) {
  std::vector<char> in_hole(static_cast<std::size_t>(set.n), 0);
  if (set.m >= 2) {
    for (Point p : set.hole) in_hole[p] = 1;
  }
  for (int i = 0; i < set.n; ++i) {
    if (!in_hole[i] && set.at(square, i, i) != i) return false;
  }
  return true;
}

namespace {

std::vector<int> degree_sequence(int n, const std::vector<Edge>& edges) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [x, y] : edges) {
    ++deg[x];
    ++deg[y];
  }
  std::erase(deg, 0);
  std::sort(deg.rbegin(), deg.rend());
  return deg;
}

int uniform_block_size(const Design& d) {
  if (d.block_sizes.sizes().size() != 1) {
    throw PreconditionError("packing/covering statistics need a single block size");
  }
  return d.block_sizes.k_min();
}

}  // namespace

PackingStats packing_stats(const Design& design) {
  const int k = uniform_block_size(design);
  if (design.lambda != 1) throw PreconditionError("packing_stats: lambda must be 1");
  Design as_packing = design;
  as_packing.kind = PackingKind{};
  if (!verify_design(as_packing)) throw PreconditionError("packing_stats: not a valid packing");
  PackingStats st;
  st.blocks = static_cast<long long>(design.blocks.size());
  st.johnson = design.n_points >= k ? johnson_bound(design.n_points, k) : 0;
  st.deficiency = st.johnson - st.blocks;
  const PairCounts counts = coverage_matrix(design);
  for (Point x = 0; x < design.n_points; ++x) {
    for (Point y = x + 1; y < design.n_points; ++y) {
      if (counts.at(x, y) == 0) st.leave.emplace_back(x, y);
    }
  }
  st.leave_degrees = degree_sequence(design.n_points, st.leave);
  return st;
}

CoveringStats covering_stats(const Design& design) {
  const int k = uniform_block_size(design);
  Design as_covering = design;
  as_covering.kind = CoveringKind{};
  as_covering.lambda = 1;
  if (!verify_design(as_covering)) throw PreconditionError("covering_stats: not a valid covering");
  CoveringStats st;
  st.blocks = static_cast<long long>(design.blocks.size());
  st.schonheim = design.n_points >= k ? schonheim_bound(design.n_points, k) : 0;
  const PairCounts counts = coverage_matrix(design);
  for (Point x = 0; x < design.n_points; ++x) {
    for (Point y = x + 1; y < design.n_points; ++y) {
      for (int extra = counts.at(x, y); extra > 1; --extra) st.excess.emplace_back(x, y);
    }
  }
  st.excess_degrees = degree_sequence(design.n_points, st.excess);
  return st;
}

void require_valid(const Design& design, const std::string& what) {
  Report rep = verify_design(design);
  if (!rep.valid) throw CertificationError(what + " failed verification: " + rep.summary());
}

void require_valid(const LatinSquareSet& set, const std::string& what) {
  Report rep = verify_orthogonal(set);
  if (!rep.valid) throw CertificationError(what + " failed verification: " + rep.summary());
}

bool blocks_meet_hole(const Design& design) {
  PointSet hole = hole_points(design);
  std::sort(hole.begin(), hole.end());
  return std::all_of(design.blocks.begin(), design.blocks.end(), [&](const Block& b) {
    return std::any_of(b.begin(), b.end(),
                       [&](Point p) { return std::binary_search(hole.begin(), hole.end(), p); });
  });
}

}  // namespace ipbd
