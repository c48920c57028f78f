// Independent reference implementations used by the tests. None of them
// calls into the library's arithmetic or coverage code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ipbd/model.hpp"

namespace oracle {

using ipbd::Design;
using i64 = std::int64_t;

inline i64 gcd_all(const std::vector<i64>& xs) {
  i64 g = 0;
  for (i64 x : xs) g = std::gcd(g, x);
  return g;
}

inline i64 alpha_of(const std::vector<int>& K) {
  std::vector<i64> xs;
  for (int k : K) xs.push_back(k - 1);
  return gcd_all(xs);
}

inline i64 beta_of(const std::vector<int>& K) {
  std::vector<i64> xs;
  for (int k : K) xs.push_back(static_cast<i64>(k) * (k - 1));
  return gcd_all(xs);
}

inline i64 md(i64 a, i64 m) { return ((a % m) + m) % m; }

/// IPBD((v;w),{3}) conditions written out directly.
inline bool ipbd_k3(i64 v, i64 w) {
  if (w >= v || w < 1) return false;
  if (w == 1) return v % 2 == 1 && md(v * (v - 1), 6) == 0;
  return v % 2 == 1 && w % 2 == 1 && md(v * (v - 1) - w * (w - 1), 6) == 0 && v >= 2 * w + 1;
}

/// Per-pair rule derived from the kind without the library's PairSpec.
/// Returns -1 for "at most lambda", -2 for "at least lambda", otherwise the
/// exact required count.
inline int required(const Design& d, ipbd::Point x, ipbd::Point y) {
  const int lam = d.lambda;
  const auto in = [](const ipbd::PointSet& s, ipbd::Point p) {
    return std::find(s.begin(), s.end(), p) != s.end();
  };
  const auto same_part = [&](const ipbd::Partition& parts) {
    for (const auto& g : parts) {
      if (in(g, x) && in(g, y)) return true;
    }
    return false;
  };
  if (std::holds_alternative<ipbd::PbdKind>(d.kind)) return lam;
  if (const auto* k = std::get_if<ipbd::IpbdKind>(&d.kind)) {
    return in(k->hole, x) && in(k->hole, y) ? 0 : lam;
  }
  if (const auto* k = std::get_if<ipbd::GddKind>(&d.kind)) return same_part(k->groups) ? 0 : lam;
  if (const auto* k = std::get_if<ipbd::TdKind>(&d.kind)) return same_part(k->groups) ? 0 : lam;
  if (const auto* k = std::get_if<ipbd::IgddKind>(&d.kind)) {
    if (same_part(k->groups)) return 0;
    bool hx = false, hy = false;
    for (const auto& h : k->holes) {
      hx = hx || in(h, x);
      hy = hy || in(h, y);
    }
    return hx && hy ? 0 : lam;
  }
  if (const auto* k = std::get_if<ipbd::HgddKind>(&d.kind)) {
    return same_part(k->groups) || same_part(k->holes) ? 0 : lam;
  }
  if (std::holds_alternative<ipbd::PackingKind>(d.kind)) return -1;
  return -2;
}

struct NaiveResult {
  bool valid = true;
  std::map<std::pair<int, int>, int> counts;
};

/// Per-pair loop over all blocks; also checks block sizes and distinct points.
inline NaiveResult naive_verify(const Design& d) {
  NaiveResult r;
  for (const auto& b : d.blocks) {
    if (!d.block_sizes.contains(static_cast<int>(b.size()))) r.valid = false;
    std::set<ipbd::Point> s(b.begin(), b.end());
    if (s.size() != b.size()) r.valid = false;
  }
  for (int x = 0; x < d.n_points; ++x) {
    for (int y = x + 1; y < d.n_points; ++y) {
      int c = 0;
      for (const auto& b : d.blocks) {
        if (std::find(b.begin(), b.end(), x) != b.end() && std::find(b.begin(), b.end(), y) != b.end()) ++c;
      }
      r.counts[{x, y}] = c;
      const int need = required(d, x, y);
      if (need == -1 ? c > d.lambda : need == -2 ? c < d.lambda : c != need) r.valid = false;
    }
  }
  return r;
}

/// Least a > 0 such that (a, a n / 2m) is an integer combination of the
/// (d_i, 1), found by breadth-first search of the lattice inside a box.
inline i64 alpha_star_bfs(const std::vector<i64>& degrees, i64 m, i64 a_limit = 80) {
  const i64 n = static_cast<i64>(degrees.size());
  std::set<i64> ds(degrees.begin(), degrees.end());
  const i64 dmax = *ds.rbegin();
  const i64 X = a_limit + 2 * dmax + 4, Y = a_limit * n / (2 * m) + n + 4;
  std::set<std::pair<i64, i64>> seen{{0, 0}};
  std::vector<std::pair<i64, i64>> frontier{{0, 0}};
  while (!frontier.empty()) {
    std::vector<std::pair<i64, i64>> next;
    for (auto [x, y] : frontier) {
      for (i64 d : ds) {
        for (int s : {1, -1}) {
          std::pair<i64, i64> q{x + s * d, y + s};
          if (std::abs(q.first) > X || std::abs(q.second) > Y) continue;
          if (seen.insert(q).second) next.push_back(q);
        }
      }
    }
    frontier = std::move(next);
  }
  for (i64 a = 1; a <= a_limit; ++a) {
    if ((a * n) % (2 * m) != 0) continue;
    if (seen.count({a, a * n / (2 * m)})) return a;
  }
  return -1;
}

/// Every sum of A terms from {1, 1+gamma, x_star}, by enumerating sequences.
inline std::set<i64> hole_sums_enum(i64 A, i64 gamma, i64 x_star) {
  std::set<i64> out;
  const i64 terms[3] = {1, 1 + gamma, x_star};
  std::vector<int> idx(static_cast<std::size_t>(A), 0);
  while (true) {
    i64 s = 0;
    for (int i : idx) s += terms[i];
    out.insert(s);
    std::size_t p = 0;
    while (p < idx.size() && idx[p] == 2) idx[p++] = 0;
    if (p == idx.size()) break;
    ++idx[p];
  }
  return out;
}

/// Random point permutation.
inline std::vector<ipbd::Point> random_perm(int n, std::mt19937_64& rng) {
  std::vector<ipbd::Point> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
