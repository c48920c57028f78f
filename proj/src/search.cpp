#include "ipbd/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <climits>
#include <numeric>
#include <unordered_set>

#include "ipbd/coverage.hpp"
#include "ipbd/verify.hpp"

namespace ipbd {

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found:
      return "FOUND";
    case SearchStatus::nonexistent:
      return "NONEXISTENT";
    case SearchStatus::budget_exhausted:
      return "BUDGET_EXHAUSTED";
  }
  return "";
}

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr Mask above(int i) { return i >= 63 ? 0 : ~Mask{0} << (i + 1); }

int lowest(Mask m) { return std::countr_zero(m); }
int popcount(Mask m) { return std::popcount(m); }

// Memo entries are capped so that memory stays bounded on long runs.
constexpr std::size_t kMemoCap = std::size_t{1} << 21;

struct Config {
  int n = 0;
  std::vector<int> sizes;   // block sizes <= n
  Mask size_ok = 0;         // bit s set when s is a block size
  int k_min = 0;
  int k_max = 0;
  std::vector<char> deg_ok;    // degree d is a sum of values k-1
  std::vector<char> edges_ok;  // edge count e is a sum of values k(k-1)/2
  SymmetryMode symmetry = SymmetryMode::all_levels;
  bool memoize = true;
  bool enumerate_all = false;
  bool resolvable = false;
  std::vector<int> class_quota;  // per size; empty when unconstrained
};

std::vector<char> representable(int limit, const std::vector<int>& parts) {
  std::vector<char> ok(static_cast<std::size_t>(limit) + 1, 0);
  ok[0] = 1;
  for (int s = 1; s <= limit; ++s) {
    for (int p : parts) {
      if (p > 0 && p <= s && ok[s - p]) {
        ok[s] = 1;
        break;
      }
    }
  }
  return ok;
}

struct Shared {
  std::atomic<long long> nodes{0};
  std::atomic<bool> budget_hit{false};
  std::atomic<int> best{INT_MAX};
  std::atomic<std::uint64_t> solutions{0};
  long long node_budget = 0;
  Clock::time_point deadline;
};

enum class Outcome { found, failed, aborted };

class Searcher {
 public:
  Searcher(const Config& cfg, Shared& shared, std::vector<Mask> adj)
      : cfg_(cfg), sh_(shared), adj_(std::move(adj)) {
    for (Mask m : adj_) edges_ += popcount(m);
    edges_ /= 2;
    if (cfg_.resolvable) quota_ = cfg_.class_quota;
  }

  int branch_index = -1;  // top-level branch owned by this searcher, or -1
  std::vector<Mask> blocks;
  std::vector<int> block_class;

  bool root_feasible() const {
    if (!cfg_.edges_ok[edges_]) return false;
    for (int v = 0; v < cfg_.n; ++v) {
      if (!cfg_.deg_ok[popcount(adj_[v])]) return false;
      if (!neighbourhood_splits(v)) return false;
    }
    return true;
  }

  // Candidates at the current node, in lexicographic order.
  std::vector<Mask> candidates(int depth) {
    std::vector<Mask> out;
    if (cfg_.resolvable) {
      resolvable_candidates(out);
      return out;
    }
    if (edges_ == 0) return out;
    int x = 0;
    while (adj_[x] == 0) ++x;
    const int y = lowest(adj_[x]);
    const Mask region = adj_[x] & adj_[y];
    const bool twins = !cfg_.enumerate_all &&
                       (cfg_.symmetry == SymmetryMode::all_levels ||
                        (cfg_.symmetry == SymmetryMode::first_level && depth == 0));
    prev_twin_.assign(static_cast<std::size_t>(cfg_.n), -1);
    if (twins) mark_twins(region);
    const Mask base = bit(x) | bit(y);
    if (cfg_.size_ok & bit(2)) out.push_back(base);
    if (cfg_.k_max > 2) extend(base, 2, region, out);
    return out;
  }

  bool apply(Mask s) {
    blocks.push_back(s);
    int sz = popcount(s);
    for (Mask m = s; m; m &= m - 1) adj_[lowest(m)] &= ~s;
    edges_ -= static_cast<long long>(sz) * (sz - 1) / 2;
    if (cfg_.resolvable) {
      cover_ |= s;
      if (!quota_.empty()) --quota_[sz];
      block_class.push_back(class_);
      if (cover_ == full()) {
        closed_.push_back(true);
        cover_ = 0;
        ++class_;
        if (!quota_.empty()) quota_ = cfg_.class_quota;
      } else {
        closed_.push_back(false);
      }
    }
    return feasible(s);
  }

  void undo() {
    const Mask s = blocks.back();
    blocks.pop_back();
    int sz = popcount(s);
    for (Mask m = s; m; m &= m - 1) {
      int v = lowest(m);
      adj_[v] |= s & ~bit(v);
    }
    edges_ += static_cast<long long>(sz) * (sz - 1) / 2;
    if (cfg_.resolvable) {
      block_class.pop_back();
      if (closed_.back()) {
        --class_;
        cover_ = full();
        // Rebuild the quota of the reopened class from its remaining blocks.
        if (!quota_.empty()) {
          quota_ = cfg_.class_quota;
          for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (block_class[i] == class_) --quota_[popcount(blocks[i])];
          }
        }
      } else if (!quota_.empty()) {
        ++quota_[sz];
      }
      closed_.pop_back();
      cover_ &= ~s;
    }
  }

  Outcome solve(int depth) {
    if (done()) {
      if (cfg_.enumerate_all) {
        sh_.solutions.fetch_add(1, std::memory_order_relaxed);
        return Outcome::failed;
      }
      return Outcome::found;
    }
    std::string key;
    const bool use_memo = cfg_.memoize && !cfg_.enumerate_all && depth > 0;
    if (use_memo) {
      key = state_key();
      if (memo_.count(key)) return Outcome::failed;
    }
    // A node is a block placement that survives the pruning tests.
    for (Mask s : candidates(depth)) {
      if (apply(s)) {
        if (!tick()) {
          undo();
          return Outcome::aborted;
        }
        Outcome r = solve(depth + 1);
        if (r == Outcome::found) return r;
        if (r == Outcome::aborted) {
          undo();
          return r;
        }
      }
      undo();
    }
    if (use_memo && memo_.size() < kMemoCap) memo_.insert(std::move(key));
    return Outcome::failed;
  }

  bool done() const {
    if (edges_ != 0) return false;
    return !cfg_.resolvable || cover_ == 0;
  }

  void flush() {
    sh_.nodes.fetch_add(pending_, std::memory_order_relaxed);
    pending_ = 0;
  }

 private:
  const Config& cfg_;
  Shared& sh_;
  std::vector<Mask> adj_;
  long long edges_ = 0;
  std::vector<int> prev_twin_;
  std::unordered_set<std::string> memo_;
  long long pending_ = 0;
  // Resolvable state.
  Mask cover_ = 0;
  int class_ = 0;
  std::vector<int> quota_;
  std::vector<bool> closed_;

  Mask full() const { return cfg_.n == 64 ? ~Mask{0} : bit(cfg_.n) - 1; }

  bool tick() {
    if (++pending_ >= 256) {
      const long long total = sh_.nodes.fetch_add(pending_, std::memory_order_relaxed) + pending_;
      pending_ = 0;
      if (total > sh_.node_budget || Clock::now() > sh_.deadline) {
        sh_.budget_hit.store(true);
        return false;
      }
    }
    if (sh_.budget_hit.load(std::memory_order_relaxed)) return false;
    if (branch_index >= 0 && sh_.best.load(std::memory_order_relaxed) < branch_index) return false;
    return true;
  }

  void mark_twins(Mask region) {
    for (Mask m = region; m; m &= m - 1) {
      const int a = lowest(m);
      for (int b = a - 1; b >= 0; --b) {
        if (!(region & bit(b))) continue;
        if ((adj_[a] & ~bit(b)) == (adj_[b] & ~bit(a))) {
          prev_twin_[a] = b;
          break;
        }
      }
    }
  }

  void extend(Mask s, int size, Mask cand, std::vector<Mask>& out) const {
    for (Mask m = cand; m; m &= m - 1) {
      const int c = lowest(m);
      if (prev_twin_[c] >= 0 && !(s & bit(prev_twin_[c]))) continue;
      const Mask s2 = s | bit(c);
      if (cfg_.size_ok & bit(size + 1)) out.push_back(s2);
      if (size + 1 < cfg_.k_max) {
        const Mask next = cand & adj_[c] & above(c);
        if (next) extend(s2, size + 1, next, out);
      }
    }
  }

  void resolvable_candidates(std::vector<Mask>& out) const {
    const Mask open = full() & ~cover_;
    if (open == 0) return;
    const int p = lowest(open);
    Mask avail = adj_[p] & open;
    Mask forced = 0;
    if (p == 0 && cover_ == 0) {
      // Classes are ordered by the least new neighbour of point 0.
      if (!adj_[0]) return;
      forced = bit(lowest(adj_[0]));
    }
    auto allowed = [&](int sz) {
      if (!(cfg_.size_ok & bit(sz))) return false;
      return quota_.empty() || quota_[sz] > 0;
    };
    // Depth-first over cliques through p inside `avail`.
    auto walk = [&](auto&& self, Mask s, int size, Mask cand) -> void {
      for (Mask m = cand; m; m &= m - 1) {
        const int c = lowest(m);
        const Mask s2 = s | bit(c);
        if (allowed(size + 1) && (s2 & forced) == forced) out.push_back(s2);
        if (size + 1 < cfg_.k_max) {
          const Mask next = cand & adj_[c] & above(c);
          if (next) self(self, s2, size + 1, next);
        }
      }
    };
    if (forced) {
      // The forced neighbour is the first member after p.
      const int f = lowest(forced);
      const Mask s2 = bit(p) | forced;
      if (allowed(2)) out.push_back(s2);
      if (cfg_.k_max > 2) walk(walk, s2, 2, avail & adj_[f] & above(f));
    } else {
      walk(walk, bit(p), 1, avail);
    }
  }

  // Necessary conditions after placing block s.
  bool feasible(Mask s) const {
    if (!cfg_.edges_ok[edges_]) return false;
    for (Mask m = s; m; m &= m - 1) {
      const int v = lowest(m);
      if (!cfg_.deg_ok[popcount(adj_[v])]) return false;
    }
    // Removing s changes the neighbourhood graph of every vertex adjacent
    // to two of its points, as well as of the points of s themselves.
    for (int v = 0; v < cfg_.n; ++v) {
      if ((s & bit(v)) || popcount(adj_[v] & s) >= 2) {
        if (!neighbourhood_splits(v)) return false;
      }
    }
    if (cfg_.resolvable && cover_ != 0) {
      // Every point still open in this class needs an available block.
      const Mask open = full() & ~cover_;
      for (Mask m = open; m; m &= m - 1) {
        if (!(adj_[lowest(m)] & open)) return false;
      }
    }
    return true;
  }

  // The blocks through v cut N(v) into cliques of sizes k-1, so the
  // residual neighbourhood must admit such a partition.
  bool neighbourhood_splits(int v) const { return splits(adj_[v]); }

  bool splits(Mask rest) const {
    if (rest == 0) return true;
    if (!cfg_.deg_ok[popcount(rest)]) return false;
    const int u = lowest(rest);
    const Mask s = bit(u);
    if (cfg_.size_ok & bit(2) && splits(rest & ~s)) return true;
    return split_from(rest, s, 1, rest & adj_[u] & above(u));
  }

  // Grows the part s (size members) through its least vertex.
  bool split_from(Mask rest, Mask s, int size, Mask cand) const {
    for (Mask m = cand; m; m &= m - 1) {
      const int c = lowest(m);
      const Mask s2 = s | bit(c);
      if (cfg_.size_ok & bit(size + 2) && splits(rest & ~s2)) return true;
      if (size + 2 < cfg_.k_max) {
        const Mask next = cand & adj_[c] & above(c);
        if (next && split_from(rest, s2, size + 1, next)) return true;
      }
    }
    return false;
  }

  std::string state_key() const {
    std::string key;
    Mask word = 0;
    int used = 0;
    auto push_bits = [&](Mask bits, int count) {
      while (count > 0) {
        const int take = std::min(count, 64 - used);
        const Mask part = take == 64 ? bits : bits & (bit(take) - 1);
        word |= part << used;
        used += take;
        count -= take;
        bits = take == 64 ? 0 : bits >> take;
        if (used == 64) {
          key.append(reinterpret_cast<const char*>(&word), sizeof word);
          word = 0;
          used = 0;
        }
      }
    };
    for (int v = 1; v < cfg_.n; ++v) push_bits(adj_[v] & (bit(v) - 1), v);
    if (cfg_.resolvable) {
      push_bits(cover_, cfg_.n);
      for (int q : quota_) push_bits(static_cast<Mask>(q), 8);
    }
    const int bytes = (used + 7) / 8;
    key.append(reinterpret_cast<const char*>(&word), static_cast<std::size_t>(bytes));
    return key;
  }
};

std::vector<Mask> required_graph(const SearchProblem& p) {
  Design shell;
  shell.n_points = p.n_points;
  shell.kind = p.kind;
  const PairSpec spec(shell);
  std::vector<Mask> adj(static_cast<std::size_t>(p.n_points), 0);
  for (Point y = 1; y < p.n_points; ++y) {
    for (Point x = 0; x < y; ++x) {
      if (spec.rule(x, y) == PairRule::exact) {
        adj[x] |= bit(y);
        adj[y] |= bit(x);
      }
    }
  }
  return adj;
}

Design to_design(const SearchProblem& p, const Searcher& s) {
  Design d;
  d.n_points = p.n_points;
  d.kind = p.kind;
  d.block_sizes = p.K;
  for (Mask m : s.blocks) {
    Block b;
    for (Mask r = m; r; r &= r - 1) b.push_back(lowest(r));
    d.blocks.push_back(std::move(b));
  }
  if (p.require_resolution) {
    Resolution res;
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      const auto c = static_cast<std::size_t>(s.block_class[i]);
      if (res.classes.size() <= c) res.classes.resize(c + 1);
      res.classes[c].blocks.push_back(i);
    }
    d.resolution = std::move(res);
  }
  d.provenance = "exhaustive search";
  return d;
}

}  // namespace

SearchResult search(const SearchProblem& p) {
  const auto started = Clock::now();
  if (p.point_cap < 1 || p.point_cap > kMaxPointCap) {
    throw PreconditionError("search point cap must lie in 1.." + std::to_string(kMaxPointCap));
  }
  if (p.n_points < 0 || p.n_points > p.point_cap) {
    throw PreconditionError("search is limited to " + std::to_string(p.point_cap) + " points");
  }
  if (p.K.empty()) throw PreconditionError("search needs a block size set");
  if (p.node_budget <= 0 || p.time_budget <= 0) throw PreconditionError("budgets must be positive");
  if (std::holds_alternative<PackingKind>(p.kind) || std::holds_alternative<CoveringKind>(p.kind)) {
    throw PreconditionError("search handles exact pair rules only");
  }
  if (p.require_resolution && std::holds_alternative<IpbdKind>(p.kind)) {
    throw PreconditionError("resolvable search supports full parallel classes only");
  }
  {
    Design shell;
    shell.n_points = p.n_points;
    shell.kind = p.kind;
    check_structure(shell);
  }

  Config cfg;
  cfg.n = p.n_points;
  for (int s : p.K.sizes()) {
    if (s <= std::max(p.n_points, 2)) cfg.sizes.push_back(s);
  }
  if (cfg.sizes.empty()) cfg.sizes.push_back(p.K.k_min());
  for (int s : cfg.sizes) {
    if (s < 64) cfg.size_ok |= bit(s);
  }
  cfg.k_min = cfg.sizes.front();
  cfg.k_max = cfg.sizes.back();
  std::vector<int> deg_parts, edge_parts;
  for (int s : cfg.sizes) {
    deg_parts.push_back(s - 1);
    edge_parts.push_back(s * (s - 1) / 2);
  }
  cfg.deg_ok = representable(std::max(cfg.n, 1), deg_parts);
  cfg.edges_ok = representable(std::max(cfg.n * (cfg.n - 1) / 2, 1), edge_parts);
  cfg.symmetry = p.symmetry;
  cfg.memoize = p.memoize;
  cfg.enumerate_all = p.enumerate_all;
  cfg.resolvable = p.require_resolution;
  if (p.class_multiset) {
    cfg.class_quota.assign(static_cast<std::size_t>(cfg.k_max) + 2, 0);
    int covered = 0;
    for (auto [size, count] : *p.class_multiset) {
      if (!p.K.contains(size) || size > cfg.k_max) {
        throw PreconditionError("class multiset uses a size outside K");
      }
      cfg.class_quota[size] = static_cast<int>(count);
      covered += size * static_cast<int>(count);
    }
    if (covered != p.n_points) {
      throw PreconditionError("class multiset must cover every point exactly once");
    }
  }

  Shared shared;
  shared.node_budget = p.node_budget;
  shared.deadline = started + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(p.time_budget));

  SearchResult result;
  auto finish = [&](SearchStatus st) {
    result.status = st;
    result.nodes = shared.nodes.load();
    result.solutions = shared.solutions.load();
    result.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return result;
  };

  const std::vector<Mask> adj = required_graph(p);
  Searcher root(cfg, shared, adj);
  if (!root.root_feasible()) {
    result.message = "necessary conditions fail at the root";
    return finish(SearchStatus::nonexistent);
  }
  if (root.done()) {
    if (cfg.enumerate_all) shared.solutions = 1;
    result.design = to_design(p, root);
    require_valid(*result.design, "search result");
    return finish(cfg.enumerate_all ? SearchStatus::nonexistent : SearchStatus::found);
  }

  const std::vector<Mask> top = root.candidates(0);
  std::vector<std::optional<Design>> found(top.size());
  const int workers = std::max(1, p.workers);

  auto run_branch = [&](Searcher& s, std::size_t i) {
    if (static_cast<int>(i) > shared.best.load() || shared.budget_hit.load()) return;
    s.branch_index = workers > 1 ? static_cast<int>(i) : -1;
    if (s.apply(top[i])) {
      Outcome r = s.solve(1);
      if (r == Outcome::found) {
        found[i] = to_design(p, s);
        int cur = shared.best.load();
        while (static_cast<int>(i) < cur && !shared.best.compare_exchange_weak(cur, static_cast<int>(i))) {
        }
        while (!s.blocks.empty()) s.undo();
        s.flush();
        return;
      }
    }
    while (!s.blocks.empty()) s.undo();
    s.flush();
  };

  if (workers == 1) {
    for (std::size_t i = 0; i < top.size(); ++i) {
      run_branch(root, i);
      if (found[i]) break;
    }
  } else {
#pragma omp parallel num_threads(workers)
    {
      Searcher local(cfg, shared, adj);
#pragma omp for schedule(dynamic, 1)
      for (std::size_t i = 0; i < top.size(); ++i) run_branch(local, i);
    }
  }

  for (auto& d : found) {
    if (d) {
      result.design = std::move(d);
      require_valid(*result.design, "search result");
      return finish(SearchStatus::found);
    }
  }
  if (shared.budget_hit.load()) {
    result.message = "budget exhausted before the search tree was exhausted";
    return finish(SearchStatus::budget_exhausted);
  }
  if (cfg.enumerate_all) {
    result.message = std::to_string(shared.solutions.load()) + " solutions";
  }
  return finish(SearchStatus::nonexistent);
}

SearchProblem ipbd_problem(int v, int w, const BlockSizeSet& K) {
  SearchProblem p;
  p.n_points = v;
  p.kind = w <= 1 ? DesignKind{PbdKind{}} : DesignKind{IpbdKind{trailing_range(v, w)}};
  p.K = K;
  return p;
}

SearchProblem gdd_problem(std::span<const int> group_sizes, const BlockSizeSet& K) {
  SearchProblem p;
  p.n_points = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  p.kind = GddKind{consecutive_groups(group_sizes)};
  p.K = K;
  return p;
}

SearchProblem igdd_problem(int g, int h, int u, const BlockSizeSet& K) {
  SearchProblem p;
  p.n_points = g * u;
  std::vector<int> sizes(static_cast<std::size_t>(u), g);
  IgddKind kind{consecutive_groups(sizes), {}};
  for (const auto& grp : kind.groups) kind.holes.emplace_back(grp.end() - h, grp.end());
  p.kind = std::move(kind);
  p.K = K;
  return p;
}

SearchProblem hgdd_problem(int u, int h, int m, const BlockSizeSet& K) {
  SearchProblem p;
  p.n_points = u * h * m;
  p.kind = hgdd_layout(u, h, m);
  p.K = K;
  return p;
}

}  // namespace ipbd
