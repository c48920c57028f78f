#include "ipbd/resolve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ipbd/arithmetic.hpp"
#include "ipbd/catalog.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/verify.hpp"

namespace ipbd {

namespace {

std::string str(long long x) { return std::to_string(x); }

// Attempts per recursive mechanism; keeps failing constructions bounded.
constexpr int kAttemptsPerStep = 4;

Design empty_design(int n, DesignKind kind, const BlockSizeSet& K) {
  Design d;
  d.n_points = n;
  d.kind = std::move(kind);
  d.block_sizes = K;
  return d;
}

Design single_block(int n, const BlockSizeSet& K) {
  Design d = empty_design(n, PbdKind{}, K);
  Block b(static_cast<std::size_t>(n));
  std::iota(b.begin(), b.end(), 0);
  d.blocks.push_back(std::move(b));
  d.provenance = "single block";
  return d;
}

// Greedy fallbacks for packings and coverings are only tried up to this
// many points; they scan every k-subset.
constexpr int kGreedyPoints = 30;

// Advances c to the next k-subset of [0, n) in lexicographic order.
bool next_subset(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// Lexicographic first-fit: a maximal, not necessarily maximum, packing.
Design greedy_packing(int v, const BlockSizeSet& K) {
  const int k = K.k_min();
  Design d = empty_design(v, PackingKind{}, K);
  std::vector<char> used(static_cast<std::size_t>(v) * v, 0);
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  do {
    bool free = true;
    for (int i = 0; i < k && free; ++i) {
      for (int j = i + 1; j < k && free; ++j) free = !used[c[i] * v + c[j]];
    }
    if (!free) continue;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) used[c[i] * v + c[j]] = 1;
    }
    d.blocks.emplace_back(c.begin(), c.end());
  } while (next_subset(c, v));
  d.provenance = "greedy first-fit packing";
  return d;
}

// Repeatedly adds the lexicographically first k-subset covering the most
// uncovered pairs.
Design greedy_covering(int v, const BlockSizeSet& K) {
  const int k = K.k_min();
  Design d = empty_design(v, CoveringKind{}, K);
  std::vector<char> covered(static_cast<std::size_t>(v) * v, 0);
  long long left = static_cast<long long>(v) * (v - 1) / 2;
  while (left > 0) {
    std::vector<int> c(static_cast<std::size_t>(k)), best;
    std::iota(c.begin(), c.end(), 0);
    int best_gain = 0;
    do {
      int gain = 0;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) gain += !covered[c[i] * v + c[j]];
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    } while (next_subset(c, v));
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) covered[best[i] * v + best[j]] = 1;
    }
    left -= best_gain;
    d.blocks.emplace_back(best.begin(), best.end());
  }
  d.provenance = "greedy covering";
  return d;
}

Design repeated(const Design& base, int lambda) {
  Design d = base;
  d.blocks.clear();
  for (int i = 0; i < lambda; ++i) d.blocks.insert(d.blocks.end(), base.blocks.begin(), base.blocks.end());
  d.lambda = lambda;
  d.resolution.reset();
  d.provenance = str(lambda) + " copies of " + base.provenance;
  return d;
}

// PBD(v, {k}) from the uniform generators, when one applies.
std::optional<Design> generated_pbd(int v, int k) {
  if (v == k && v >= 2) return single_block(v, BlockSizeSet::from({k}));
  if (k == 3 && v >= 3 && (v % 6 == 1 || v % 6 == 3)) return steiner_triple(v);
  const int q = k - 1;
  if (q >= 2 && v == q * q + q + 1 && mols_available(q) > 0) return projective_plane(q);
  if (k >= 2 && v == k * k && mols_available(k) > 0) return affine_plane(k);
  return std::nullopt;
}

bool all_full(const Design& d) {
  if (!d.resolution) return false;
  return std::all_of(d.resolution->classes.begin(), d.resolution->classes.end(),
                     [](const ParallelClass& c) { return c.kind == ClassKind::full; });
}

std::vector<int> uniform(int g, int count) { return std::vector<int>(static_cast<std::size_t>(count), g); }

std::vector<int> prime_powers_upto(int limit) {
  std::vector<int> out;
  for (int q = 2; q <= limit; ++q) {
    if (mols_available(q) > 0) out.push_back(q);
  }
  return out;
}

}  // namespace

TraceNode& TraceNode::child(std::string step_name, std::string subject_text) {
  children.push_back(TraceNode{std::move(step_name), std::move(subject_text), false, "", {}});
  return children.back();
}

std::string TraceNode::render(int indent) const {
  std::ostringstream out;
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << (ok ? "[ok] " : "[--] ") << step;
  if (!subject.empty()) out << " " << subject;
  if (!detail.empty()) out << ": " << detail;
  out << "\n";
  for (const auto& c : children) out << c.render(indent + 1);
  return out.str();
}

nlohmann::json TraceNode::to_json() const {
  nlohmann::json j{{"step", step}, {"subject", subject}, {"ok", ok}};
  if (!detail.empty()) j["detail"] = detail;
  if (!children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : children) j["children"].push_back(c.to_json());
  }
  return j;
}

Design reshape(const IngredientRequest& req, const Design& design) {
  if (!req.matches(design)) {
    throw PreconditionError("design does not have the shape " + req.describe());
  }
  Design d = design;
  d.block_sizes = req.K;
  switch (req.type) {
    case RequestType::pbd:
      d.kind = PbdKind{};
      break;
    case RequestType::ipbd:
      if (req.w <= 1) {
        d.kind = req.w == 1 ? DesignKind{IpbdKind{{d.n_points - 1}}} : DesignKind{IpbdKind{}};
      }
      break;
    case RequestType::gdd:
      d.kind = GddKind{groups_of(design)};
      d.resolution.reset();
      break;
    case RequestType::igdd:
      if (!std::holds_alternative<IgddKind>(d.kind)) {
        IgddKind k{groups_of(design), {}};
        k.holes.assign(k.groups.size(), {});
        d.kind = std::move(k);
        d.resolution.reset();
      }
      break;
    case RequestType::hgdd:
      break;
    case RequestType::packing:
      d.kind = PackingKind{};
      d.resolution.reset();
      break;
    case RequestType::covering:
      d.kind = CoveringKind{};
      d.resolution.reset();
      break;
  }
  d = normalize(d);
  d.provenance = design.provenance;
  require_valid(d, req.describe());
  return d;
}

Resolver::Resolver(ResolveOptions options) : options_(options) {}

std::optional<Design> Resolver::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void Resolver::remember(const IngredientRequest& request, const Design& design) {
  std::lock_guard lock(mutex_);
  memo_.emplace(request.describe(), design);
}

std::size_t Resolver::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

std::optional<Design> Resolver::resolve(const IngredientRequest& request, TraceNode* trace) {
  return resolve(request, options_.depth, trace);
}

IngredientSource Resolver::source(int depth, TraceNode* trace) {
  return [this, depth, trace](const IngredientRequest& req) -> Design {
    auto d = resolve(req, depth, trace);
    if (!d) throw IngredientError(req.describe(), "not resolved");
    return *d;
  };
}

std::optional<Design> Resolver::resolve(const IngredientRequest& req, int depth, TraceNode* trace) {
  const std::string key = req.describe();
  TraceNode scratch;
  TraceNode& node = trace ? trace->child("resolve", key) : scratch;
  if (auto hit = lookup(key)) {
    node.ok = true;
    node.detail = "memo (" + hit->provenance + ")";
    return hit;
  }
  {
    std::lock_guard lock(mutex_);
    if (nonexistent_.count(key)) {
      node.detail = "known nonexistent";
      return std::nullopt;
    }
  }
  if (const Admissibility adm = admissible(req); !adm) {
    node.detail = "inadmissible (" + adm.condition + "): " + adm.reason;
    return std::nullopt;
  }
  auto accept = [&](Design d, const std::string& how) {
    Design shaped = reshape(req, d);
    node.ok = true;
    node.detail = how + (shaped.provenance.empty() ? "" : " (" + shaped.provenance + ")");
    remember(req, shaped);
    return std::optional<Design>(std::move(shaped));
  };

  if (auto d = catalog::find_design([&](const Design& c) { return req.matches(c); })) {
    return accept(std::move(*d), "catalog");
  }
  if (auto d = direct(req, depth, node)) return accept(std::move(*d), "generator");
  bool proved = false;
  if (auto d = searched(req, node, proved)) return accept(std::move(*d), "search");
  if (proved) {
    std::lock_guard lock(mutex_);
    nonexistent_.insert(key);
    node.detail = "search proved nonexistence";
    return std::nullopt;
  }
  if (depth > 0) {
    if (auto d = recursive(req, depth, node)) return accept(std::move(*d), "recursion");
  }
  node.detail = depth > 0 ? "no construction succeeded" : "no direct source and recursion depth exhausted";
  return std::nullopt;
}

std::optional<Design> Resolver::direct(const IngredientRequest& req, int depth, TraceNode& trace) {
  const BlockSizeSet& K = req.K;
  switch (req.type) {
    case RequestType::pbd: {
      if (req.v <= 1) return empty_design(std::max(req.v, 0), PbdKind{}, K);
      if (req.lambda > 1) {
        auto base = resolve(IngredientRequest::pbd(req.v, K), depth, &trace);
        if (base) return repeated(*base, req.lambda);
        return std::nullopt;
      }
      for (int k : K.sizes()) {
        if (auto d = generated_pbd(req.v, k)) return d;
      }
      return std::nullopt;
    }
    case RequestType::ipbd: {
      if (req.lambda > 1) {
        auto base = resolve(IngredientRequest::ipbd(req.v, req.w, K), depth, &trace);
        if (base) return repeated(*base, req.lambda);
        return std::nullopt;
      }
      if (req.w <= 1) return resolve(IngredientRequest::pbd(req.v, K), depth, &trace);
      // A uniform PBD minus one block is an IPBD whose hole is that block.
      for (int k : K.sizes()) {
        auto d = generated_pbd(req.v, k);
        if (!d || k != req.w || d->blocks.empty()) continue;
        Design out = *d;
        out.resolution.reset();
        out.kind = IpbdKind{out.blocks.front()};
        out.blocks.erase(out.blocks.begin());
        out.provenance = d->provenance + " minus a block";
        return out;
      }
      return std::nullopt;
    }
    case RequestType::gdd: {
      const auto& gs = req.groups;
      if (gs.size() <= 1) return empty_design(req.point_count(), GddKind{consecutive_groups(gs)}, K);
      if (gs.back() == 1) {
        return resolve(IngredientRequest::pbd(static_cast<int>(gs.size()), K), depth, &trace);
      }
      const int c = static_cast<int>(gs.size());
      if (gs.front() == gs.back() && K.contains(c) &&
          (c <= 3 || mols_available(gs.front()) >= c - 2)) {
        return transversal_design(c, gs.front());
      }
      // Deleting a point from a PBD(g c + 1, {g+1}) leaves a GDD(g^c).
      if (gs.front() == gs.back() && K.sizes().size() == 1 && K.k_min() == gs.front() + 1) {
        const int v = req.point_count();
        if (auto base = resolve(IngredientRequest::pbd(v + 1, K), depth, &trace)) {
          Design out = empty_design(v, GddKind{}, K);
          Partition groups;
          for (const auto& b : base->blocks) {
            const bool through = std::binary_search(b.begin(), b.end(), static_cast<Point>(v));
            Block nb(b.begin(), b.end());
            if (through) {
              nb.pop_back();
              groups.push_back(std::move(nb));
            } else {
              out.blocks.push_back(std::move(nb));
            }
          }
          out.kind = GddKind{std::move(groups)};
          out.provenance = base->provenance + " minus a point";
          return out;
        }
      }
      // 1^n h^1 is an IPBD((n+h; h)).
      if (gs.front() == 1 && std::count(gs.begin(), gs.end(), 1) == c - 1) {
        return resolve(IngredientRequest::ipbd(req.point_count(), gs.back(), K), depth, &trace);
      }
      return std::nullopt;
    }
    case RequestType::igdd: {
      if (req.u <= 1) {
        IgddKind kind{consecutive_groups(uniform(req.g, std::max(req.u, 0))), {}};
        for (const auto& g : kind.groups) kind.holes.emplace_back(g.end() - req.h, g.end());
        return empty_design(req.g * std::max(req.u, 0), std::move(kind), K);
      }
      if (req.h == 0) return resolve(IngredientRequest::gdd(uniform(req.g, req.u), K), depth, &trace);
      // TD(u, g) minus one block: the block's points are the holes.
      if (req.h == 1 && K.contains(req.u) && req.u >= 3 && mols_available(req.g) >= req.u - 2) {
        Design td = transversal_design(req.u, req.g);
        IgddKind kind{groups_of(td), {}};
        const Block hole_block = td.blocks.front();
        for (const auto& g : kind.groups) {
          PointSet h;
          for (Point p : hole_block) {
            if (std::binary_search(g.begin(), g.end(), p)) h.push_back(p);
          }
          kind.holes.push_back(std::move(h));
        }
        td.blocks.erase(td.blocks.begin());
        td.kind = std::move(kind);
        td.provenance += " minus a block";
        return td;
      }
      return std::nullopt;
    }
    case RequestType::hgdd:
      if (req.u <= 1 || req.m <= 1) return empty_design(req.point_count(), hgdd_layout(req.u, req.h, req.m), K);
      return std::nullopt;
    case RequestType::packing:
    case RequestType::covering: {
      const int k = K.k_min();
      const DesignKind kind = req.type == RequestType::packing ? DesignKind{PackingKind{}}
                                                               : DesignKind{CoveringKind{}};
      if (req.v < k) {
        if (req.type == RequestType::packing) return empty_design(std::max(req.v, 0), kind, K);
        return std::nullopt;
      }
      // Two k-blocks on fewer than 2k-1 points share a pair, so one block is optimal.
      if ((req.type == RequestType::packing && req.v < 2 * k - 1) ||
          (req.type == RequestType::covering && req.v == k)) {
        Design d = empty_design(req.v, kind, K);
        Block b;
        for (int i = 0; i < k; ++i) b.push_back(i);
        d.blocks.push_back(std::move(b));
        d.provenance = "single block";
        return d;
      }
      if (admissible_pbd(req.v, K)) {
        if (auto d = resolve(IngredientRequest::pbd(req.v, K), depth, &trace)) return d;
      }
      if (req.v <= kGreedyPoints) {
        return req.type == RequestType::packing ? greedy_packing(req.v, K) : greedy_covering(req.v, K);
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Design> Resolver::searched(const IngredientRequest& req, TraceNode& trace, bool& proved) {
  proved = false;
  if (!options_.use_search || req.lambda != 1) return std::nullopt;
  const int n = req.point_count();
  if (n > options_.search_cap || n > kMaxPointCap) return std::nullopt;
  SearchProblem p;
  switch (req.type) {
    case RequestType::pbd:
      p = ipbd_problem(req.v, 0, req.K);
      break;
    case RequestType::ipbd:
      p = ipbd_problem(req.v, req.w, req.K);
      break;
    case RequestType::gdd:
      p = gdd_problem(req.groups, req.K);
      break;
    case RequestType::igdd:
      p = igdd_problem(req.g, req.h, req.u, req.K);
      break;
    case RequestType::hgdd:
      p = hgdd_problem(req.u, req.h, req.m, req.K);
      break;
    default:
      return std::nullopt;
  }
  p.node_budget = options_.node_budget;
  p.time_budget = options_.time_budget;
  p.workers = options_.workers;
  p.point_cap = std::max(n, 1);
  const SearchResult r = search(p);
  TraceNode& node = trace.child("search", req.describe());
  node.detail = to_string(r.status) + " after " + str(r.nodes) + " nodes";
  if (r.status == SearchStatus::found) {
    node.ok = true;
    return r.design;
  }
  proved = r.status == SearchStatus::nonexistent;
  return std::nullopt;
}

// The recursive mechanisms, shared by resolve and construct_*.
struct Recipes {
  static std::optional<Design> attempt(TraceNode& parent, const std::string& step,
                                       const std::string& subject, auto&& build) {
    TraceNode& node = parent.child(step, subject);
    try {
      Design d = build(node);
      node.ok = true;
      return d;
    } catch (const IngredientError& e) {
      node.detail = std::string("missing ingredient ") + e.request();
    } catch (const PreconditionError& e) {
      node.detail = e.what();
    }
    return std::nullopt;
  }

  static Design need(Resolver& R, const IngredientRequest& req, int depth, TraceNode& node) {
    auto d = R.resolve(req, depth, &node);
    if (!d) throw IngredientError(req.describe(), "not resolved");
    return *d;
  }

  static std::optional<Design> ipbd_steps(Resolver& R, int v, int w, const BlockSizeSet& K,
                                          int depth, TraceNode& trace) {
    if (auto d = by_extension(R, v, w, K, trace)) return d;
    if (depth < 0) return std::nullopt;
    if (auto d = by_group_filling(R, v, w, K, depth, trace)) return d;
    if (auto d = by_igdd_fill(R, v, w, K, depth, trace)) return d;
    return std::nullopt;
  }

  // Resolvable bases on v-w points with at least w full classes.
  static std::optional<Design> by_extension(Resolver& R, int v, int w, const BlockSizeSet& K,
                                            TraceNode& trace) {
    const int n = v - w;
    std::vector<Design> bases;
    for (int q : prime_powers_upto(16)) {
      if (q * q == n && K.contains(q + 1) && w <= q + 1 && (w == q + 1 || K.contains(q))) {
        bases.push_back(affine_plane(q));
      }
    }
    if (n >= 2 && n % 2 == 0 && K.contains(3) && w <= n - 1 && (w == n - 1 || K.contains(2))) {
      bases.push_back(one_factorization(n));
    }
    if (auto d = catalog::find_design([&](const Design& c) {
          return c.n_points == n && std::holds_alternative<PbdKind>(c.kind) && all_full(c) &&
                 c.resolution->classes.size() >= static_cast<std::size_t>(w) && c.lambda == 1;
        })) {
      bases.push_back(std::move(*d));
    }
    const auto& opt = R.options();
    if (bases.empty() && opt.use_search && n <= opt.search_cap) {
      for (int k : K.sizes()) {
        const int s = k - 1;
        if (s < 2 || n % s != 0 || (n - 1) % (s - 1) != 0 || (n - 1) / (s - 1) < w) continue;
        if ((n - 1) / (s - 1) > w && !K.contains(s)) continue;
        SearchProblem p = ipbd_problem(n, 0, BlockSizeSet::from({s}));
        p.require_resolution = true;
        p.node_budget = opt.node_budget;
        p.time_budget = opt.time_budget;
        p.point_cap = std::max(n, 1);
        TraceNode& node = trace.child("search", "resolvable PBD(" + str(n) + ",{" + str(s) + "})");
        const SearchResult r = search(p);
        node.detail = to_string(r.status);
        if (r.design) {
          node.ok = true;
          bases.push_back(*r.design);
          break;
        }
      }
    }
    for (const Design& base : bases) {
      auto d = attempt(trace, "projective_extend", base.provenance, [&](TraceNode&) {
        Design out = projective_extend(base, static_cast<std::size_t>(w));
        if (!IngredientRequest::ipbd(v, w, K).matches(out)) {
          throw PreconditionError("extension has block sizes outside K");
        }
        return out;
      });
      if (d) return d;
    }
    return std::nullopt;
  }

  static std::optional<Design> by_group_filling(Resolver& R, int v, int w, const BlockSizeSet& K,
                                                int depth, TraceNode& trace) {
    int tries = 0;
    // Plain transversal designs: v = kq + e, w = q + e.
    for (int k : K.sizes()) {
      if (k < 3) continue;
      for (int q = 2; q <= w && tries < kAttemptsPerStep; ++q) {
        const int e = w - q;
        if (k * q + e != v) continue;
        const auto gdd_req = IngredientRequest::gdd(uniform(q, k), K);
        const auto fill_req = e <= 1 ? IngredientRequest::pbd(q + e, K)
                                     : IngredientRequest::ipbd(q + e, e, K);
        if (!admissible(gdd_req) || !admissible(fill_req)) continue;
        ++tries;
        auto d = attempt(trace, "fill_groups_with_ipbds",
                         gdd_req.describe() + " + " + str(e) + " points", [&](TraceNode& node) {
                           Design gdd = need(R, gdd_req, depth, node);
                           return fill_groups_with_ipbds(gdd, e, K, R.source(depth, &node));
                         });
        if (d) return d;
      }
    }
    // Truncated and weighted TD(t+2, A): alpha(tA + B) = v - w and
    // w = alpha C + e with the first C last-group points weighted alpha.
    const int a = K.alpha();
    if ((v - w) % a != 0) return std::nullopt;
    const int base = (v - w) / a;
    tries = 0;
    for (int A : prime_powers_upto(9)) {
      for (int t = 1; t <= std::min(A - 1, 4) && tries < kAttemptsPerStep; ++t) {
        const int B = base - t * A;
        if (B < 1 || B >= A) continue;
        for (int C = std::min(A, w / a); C >= 1 && tries < kAttemptsPerStep; --C) {
          const int e = w - a * C;
          const auto f1 = e <= 1 ? IngredientRequest::pbd(a * A + e, K)
                                 : IngredientRequest::ipbd(a * A + e, e, K);
          const auto f2 = e <= 1 ? IngredientRequest::pbd(a * B + e, K)
                                 : IngredientRequest::ipbd(a * B + e, e, K);
          if (!admissible(f1) || !admissible(f2)) continue;
          ++tries;
          std::vector<int> weights(static_cast<std::size_t>(A), 0);
          std::fill(weights.begin(), weights.begin() + C, a);
          const std::string subject = "TD(" + str(t + 2) + "," + str(A) + ") keep " + str(B) +
                                      ", weights " + str(a) + "x" + str(C) + ", +" + str(e);
          auto d = attempt(trace, "truncate_weight_td", subject, [&](TraceNode& node) {
            Design gdd = truncate_weight_td(transversal_design(t + 2, A), B, weights, a, K,
                                            R.source(depth, &node));
            return fill_groups_with_ipbds(gdd, e, K, R.source(depth, &node));
          });
          if (d) return d;
        }
      }
    }
    return std::nullopt;
  }

  static std::optional<Design> by_igdd_fill(Resolver& R, int v, int w, const BlockSizeSet& K,
                                            int depth, TraceNode& trace) {
    int tries = 0;
    for (int u = 2; u <= v - w && tries < kAttemptsPerStep; ++u) {
      if ((v - w) % u != 0) continue;
      const int d = (v - w) / u;
      for (int h = 0; h * u <= w && tries < kAttemptsPerStep; ++h) {
        const int y = w - (u - 1) * h;
        if (y < std::max(h, 1)) continue;
        const int x = d + y, g = d + h;
        if (x >= v) continue;
        const auto ig = IngredientRequest::igdd(g, h, u, K);
        const auto fl = IngredientRequest::ipbd(x, y, K);
        if (!admissible(ig) || !admissible(fl)) continue;
        ++tries;
        auto out = attempt(trace, "igdd_fill", ig.describe() + " + " + fl.describe(),
                           [&](TraceNode& node) {
                             Design a = need(R, ig, depth, node);
                             Design b = need(R, fl, depth, node);
                             return igdd_fill(a, b);
                           });
        if (out) return out;
      }
    }
    return std::nullopt;
  }

  static std::optional<Design> gdd_steps(Resolver& R, int g, int n, int h, const BlockSizeSet& K,
                                         int depth, TraceNode& trace) {
    if (depth < 0) return std::nullopt;
    // Inflation of an IPBD((n+s; s)) with h = gs.
    if (g >= 1 && h % g == 0) {
      const int s = h / g;
      const auto tpl = s >= 2 ? IngredientRequest::ipbd(n + s, s, K) : IngredientRequest::pbd(n + s, K);
      // A single-block template would ask for the requested GDD itself.
      const bool circular = s <= 1 && K.contains(n + s);
      if (!circular && admissible(tpl)) {
        auto d = attempt(trace, "inflate", tpl.describe() + " by " + str(g), [&](TraceNode& node) {
          Design t = need(R, tpl, depth, node);
          return inflate(t, g, K, R.source(depth, &node));
        });
        if (d) return d;
      }
    }
    // IGDD((alpha x + h'; h')^u) + GDD(alpha^x (alpha y)^1).
    const int a = K.alpha();
    if (g != a) return std::nullopt;
    int tries = 0;
    for (int u = 2; u <= n && tries < kAttemptsPerStep; ++u) {
      if (n % u != 0) continue;
      const int x = n / u;
      for (int hh = 0; hh * (u - 1) <= h && tries < kAttemptsPerStep; ++hh) {
        const int rest = h - hh * (u - 1);
        if (rest % a != 0 || rest < hh) continue;
        const int y = rest / a;
        if (a * x + a * y >= a * n + h) continue;
        std::vector<int> ftype = uniform(a, x);
        if (y > 0) ftype.push_back(a * y);
        const auto ig = IngredientRequest::igdd(a * x + hh, hh, u, K);
        const auto fl = IngredientRequest::gdd(ftype, K);
        if (!admissible(ig) || !admissible(fl)) continue;
        ++tries;
        auto d = attempt(trace, "igdd_fill_gdd", ig.describe() + " + " + fl.describe(),
                         [&](TraceNode& node) {
                           Design i = need(R, ig, depth, node);
                           Design f = need(R, fl, depth, node);
                           return igdd_fill_gdd(i, f, a);
                         });
        if (d) return d;
      }
    }
    return std::nullopt;
  }

  static std::optional<Design> pbd_steps(Resolver& R, int v, const BlockSizeSet& K, int depth,
                                         TraceNode& trace) {
    int tries = 0;
    for (int w = v - 1; w >= 2 && tries < kAttemptsPerStep; --w) {
      if (!admissible_ipbd(v, w, K)) continue;
      if (!K.contains(w) && !admissible_pbd(w, K)) continue;
      ++tries;
      auto d = attempt(trace, "fill_hole", "IPBD((" + str(v) + ";" + str(w) + ")) + PBD(" + str(w) + ")",
                       [&](TraceNode& node) {
                         Design outer = need(R, IngredientRequest::ipbd(v, w, K), depth, node);
                         Design inner = K.contains(w) ? single_block(w, K)
                                                      : need(R, IngredientRequest::pbd(w, K), depth, node);
                         return fill_hole(outer, inner);
                       });
      if (d) return d;
    }
    return std::nullopt;
  }
};

std::optional<Design> Resolver::recursive(const IngredientRequest& req, int depth, TraceNode& trace) {
  const int sub = depth - 1;
  switch (req.type) {
    case RequestType::pbd:
      if (req.lambda == 1) return Recipes::pbd_steps(*this, req.v, req.K, sub, trace);
      return std::nullopt;
    case RequestType::ipbd:
      if (req.lambda == 1 && req.w >= 2) return Recipes::ipbd_steps(*this, req.v, req.w, req.K, sub, trace);
      return std::nullopt;
    case RequestType::gdd: {
      const auto& gs = req.groups;
      if (gs.size() < 2) return std::nullopt;
      const int g = gs.front();
      const int n_small = static_cast<int>(std::count(gs.begin(), gs.end(), g));
      if (n_small == static_cast<int>(gs.size())) {
        return Recipes::gdd_steps(*this, g, n_small, 0, req.K, sub, trace);
      }
      if (n_small == static_cast<int>(gs.size()) - 1) {
        return Recipes::gdd_steps(*this, g, n_small, gs.back(), req.K, sub, trace);
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

ConstructionResult construct_ipbd(int v, int w, const BlockSizeSet& K, Resolver& resolver) {
  if (const Admissibility adm = admissible_ipbd(v, w, K); !adm) {
    throw PreconditionError("IPBD((" + str(v) + ";" + str(w) + ")," + K.to_string() +
                            ") fails the " + adm.condition + " condition: " + adm.reason);
  }
  const auto req = IngredientRequest::ipbd(v, w, K);
  ConstructionResult out;
  out.trace.step = "construct";
  out.trace.subject = req.describe();
  out.design = resolver.resolve(req, 0, &out.trace);
  if (!out.design && w >= 2) {
    out.design = Recipes::ipbd_steps(resolver, v, w, K, resolver.options().depth - 1, out.trace);
    if (out.design) {
      out.design = reshape(req, *out.design);
      resolver.remember(req, *out.design);
    }
  }
  out.trace.ok = out.design.has_value();
  if (!out.design) out.trace.detail = "no construction succeeded";
  return out;
}

ConstructionResult construct_gdd(int g, int n, int h, const BlockSizeSet& K, Resolver& resolver) {
  if (g < 1 || n < 1 || h < 0) throw PreconditionError("construct_gdd needs g, n >= 1 and h >= 0");
  const bool uniform_type = h == 0 || h == g;
  const int u = n + (h == g ? 1 : 0);
  const Admissibility adm =
      uniform_type ? admissible_gdd_uniform(g, u, K) : admissible_gdd_gnh1(g, n, h, K);
  std::vector<int> type = uniform(g, n);
  if (h > 0) type.push_back(h);
  const auto req = IngredientRequest::gdd(type, K);
  if (!adm) {
    throw PreconditionError(req.describe() + " fails the " + adm.condition +
                            " condition: " + adm.reason);
  }
  ConstructionResult out;
  out.trace.step = "construct";
  out.trace.subject = req.describe();
  out.design = resolver.resolve(req, 0, &out.trace);
  if (!out.design) {
    out.design = Recipes::gdd_steps(resolver, g, uniform_type ? u : n, uniform_type ? 0 : h, K,
                                    resolver.options().depth - 1, out.trace);
    if (out.design) {
      out.design = reshape(req, *out.design);
      resolver.remember(req, *out.design);
    }
  }
  out.trace.ok = out.design.has_value();
  if (!out.design) out.trace.detail = "no construction succeeded";
  return out;
}

}  // namespace ipbd
