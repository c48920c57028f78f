// Acceptance suite: one PASS/FAIL line per criterion, exact tolerances.
// Exits nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ipbd/arithmetic.hpp"
#include "ipbd/catalog.hpp"
#include "ipbd/compose.hpp"
#include "ipbd/derived.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/resolve.hpp"
#include "ipbd/search.hpp"
#include "ipbd/verify.hpp"
#include "oracles.hpp"

using namespace ipbd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Resolver& shared() {
  static Resolver R;
  return R;
}

std::vector<int> sorted_sizes(const Design& d) {
  auto s = group_sizes(d);
  std::sort(s.begin(), s.end());
  return s;
}

SearchProblem problem_for(const IngredientRequest& r) {
  switch (r.type) {
    case RequestType::pbd: return ipbd_problem(r.v, 0, r.K);
    case RequestType::ipbd: return ipbd_problem(r.v, r.w, r.K);
    case RequestType::gdd: {
      std::vector<int> gs;
      for (int g : r.groups) {
        if (g > 0) gs.push_back(g);
      }
      return gdd_problem(gs, r.K);
    }
    case RequestType::igdd: return igdd_problem(r.g, r.h, r.u, r.K);
    case RequestType::hgdd: return hgdd_problem(r.u, r.h, r.m, r.K);
    default: throw PreconditionError("no exact search for " + r.describe());
  }
}

// Search first, resolver as fallback; either way the result is reshaped
// into the requested layout.
Design supply(const IngredientRequest& r) {
  static std::map<std::string, Design> memo;
  const std::string key = r.describe();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::optional<Design> d;
  if (r.point_count() <= kDefaultPointCap) {
    auto p = problem_for(r);
    p.time_budget = 20;
    auto res = search(p);
    if (res.status == SearchStatus::found) d = reshape(r, *res.design);
  }
  if (!d) d = shared().resolve(r);
  if (!d) throw IngredientError(key, "neither search nor the resolver produced it");
  memo.emplace(key, *d);
  return *d;
}

// ---------------------------------------------------------------- 1

Outcome admissibility_suite() {
  Outcome o;
  for (const auto& s : std::vector<std::vector<int>>{{3}, {4}, {3, 4, 5}, {4, 7}, {3, 5}}) {
    const auto K = derive_params(s);
    const auto a = oracle::alpha_of(s), b = oracle::beta_of(s);
    if (K.alpha() != a || K.beta() != b || K.gamma() != b / a) {
      o.fail("moduli differ for a set of size " + std::to_string(s.size()));
    }
  }
  const auto K3 = BlockSizeSet::from({3});
  int checked = 0;
  for (int v = 0; v <= 100; ++v) {
    for (int w = 0; w <= v; ++w, ++checked) {
      if (bool(admissible_ipbd(v, w, K3)) != oracle::ipbd_k3(v, w)) {
        o.fail("K={3} disagrees at v=" + std::to_string(v) + " w=" + std::to_string(w));
      }
    }
  }
  if (o.pass) o.detail = "5 block-size sets, " + std::to_string(checked) + " (v,w) pairs";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome exception_list() {
  Outcome o;
  const std::vector<std::pair<int, int>> excluded = {{7, 2}, {8, 2}, {9, 2}, {10, 2}, {12, 2}, {13, 2}, {11, 4}};
  long long nodes = 0;
  for (auto [v, w] : excluded) {
    const auto r = search(ipbd_problem(v, w, BlockSizeSet::parse("3.." + std::to_string(v))));
    nodes += r.nodes;
    if (r.status != SearchStatus::nonexistent) {
      o.fail("(" + std::to_string(v) + ";" + std::to_string(w) + ") " + to_string(r.status));
    }
  }
  int found = 0;
  for (int w = 2; 2 * w + 3 <= 13; ++w) {
    for (int v = 2 * w + 3; v <= 13; ++v) {
      if (std::find(excluded.begin(), excluded.end(), std::make_pair(v, w)) != excluded.end()) continue;
      const auto r = search(ipbd_problem(v, w, BlockSizeSet::parse("3.." + std::to_string(v))));
      nodes += r.nodes;
      if (r.status != SearchStatus::found || !verify_design(*r.design)) {
        o.fail("(" + std::to_string(v) + ";" + std::to_string(w) + ") " + to_string(r.status));
      } else {
        ++found;
      }
    }
  }
  if (o.pass) {
    o.detail = "7 nonexistent, " + std::to_string(found) + " neighbours found, " + std::to_string(nodes) + " nodes";
  }
  return o;
}

// ---------------------------------------------------------------- 3

Outcome generators() {
  Outcome o;
  int objects = 0;
  const auto check = [&](const Design& d, const std::string& name, int v, std::size_t b) {
    ++objects;
    if (!verify_design(d)) o.fail(name + " does not verify");
    if (d.n_points != v || d.blocks.size() != b) o.fail(name + " has the wrong size");
  };
  check(projective_plane(2), "Fano", 7, 7);
  check(projective_plane(3), "PG(2,3)", 13, 13);
  check(affine_plane(2), "AG(2,2)", 4, 6);
  check(affine_plane(3), "AG(2,3)", 9, 12);
  for (int v : {7, 9, 13, 15}) check(steiner_triple(v), "STS(" + std::to_string(v) + ")", v, v * (v - 1) / 6);
  for (auto [k, q] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {5, 4}}) {
    check(transversal_design(k, q), "TD(" + std::to_string(k) + "," + std::to_string(q) + ")", k * q, q * q);
  }
  for (int q : {3, 4, 5, 7, 8, 9}) {
    ++objects;
    const auto L = mols(q, q - 1);
    if (static_cast<int>(L.count()) != q - 1 || mols_available(q) != q - 1) {
      o.fail("N(" + std::to_string(q) + ") != q-1");
    }
    if (!verify_latin(L) || !verify_orthogonal(L)) o.fail("MOLS(" + std::to_string(q) + ") fails");
  }
  if (o.pass) o.detail = std::to_string(objects) + " objects verified";
  return o;
}

// ---------------------------------------------------------------- 4

struct FillCase {
  IngredientRequest igdd, filler;
};

struct GddFillCase {
  IngredientRequest igdd, filler;
  int alpha;
};

Outcome bookkeeping() {
  Outcome o;
  const auto K3 = BlockSizeSet::from({3});
  const auto K4 = BlockSizeSet::from({4});
  const std::vector<FillCase> fills = {
      {IngredientRequest::igdd(3, 1, 3, K3), IngredientRequest::ipbd(3, 1, K3)},
      {IngredientRequest::igdd(5, 1, 3, K3), IngredientRequest::ipbd(7, 3, K3)},
      {IngredientRequest::igdd(4, 1, 4, K4), IngredientRequest::ipbd(4, 1, K4)},
      {IngredientRequest::igdd(7, 1, 3, K3), IngredientRequest::ipbd(9, 3, K3)},
      {IngredientRequest::igdd(7, 1, 3, K3), IngredientRequest::ipbd(7, 1, K3)},
  };
  const std::vector<GddFillCase> gdd_fills = {
      {IngredientRequest::igdd(5, 1, 3, K3), IngredientRequest::gdd({2, 2, 2}, K3), 2},
      {IngredientRequest::igdd(7, 1, 3, K3), IngredientRequest::gdd({2, 2, 2, 2}, K3), 2},
      {IngredientRequest::igdd(7, 1, 3, K3), IngredientRequest::gdd({2, 2, 2, 4}, K3), 2},
      {IngredientRequest::gdd({4, 4, 4}, K3), IngredientRequest::gdd({2, 2, 2}, K3), 2},
  };
  const std::vector<IngredientRequest> inflations = {
      IngredientRequest::ipbd(7, 3, K3), IngredientRequest::pbd(7, K3), IngredientRequest::pbd(9, K3),
      IngredientRequest::ipbd(9, 3, K3)};
  const std::vector<std::function<Design()>> resolvables = {
      [] { return affine_plane(2); },
      [] { return affine_plane(3); },
      [] { return affine_plane(4); },
      [] { return std::get<Design>(catalog::tabulated("kts-15")); },
      [] { return one_factorization(4); },
      [] { return one_factorization(6); },
      [] { return one_factorization(8); },
      [] { return resolvable_transversal_design(3, 3); },
      [] { return resolvable_transversal_design(3, 4); },
      [] { return resolvable_transversal_design(3, 5); },
  };

  std::mt19937_64 rng(20261014);
  int counts[4] = {0, 0, 0, 0};
  for (int t = 0; t < 50; ++t) {
    const int op = static_cast<int>(rng() % 4);
    ++counts[op];
    const std::string tag = "application " + std::to_string(t) + ": ";
    try {
      if (op == 0) {
        const auto& c = fills[rng() % fills.size()];
        const Design ig = supply(c.igdd), f = supply(c.filler);
        const Design d = igdd_fill(ig, f);
        const int x = f.n_points, y = static_cast<int>(hole_points(f).size());
        const int w = static_cast<int>(hole_points(d).size());
        if (!verify_design(d)) o.fail(tag + "igdd_fill output invalid");
        if (d.n_points - w != c.igdd.u * (x - y) || w != (c.igdd.u - 1) * c.igdd.h + y) {
          o.fail(tag + "igdd_fill parameters " + c.igdd.describe());
        }
      } else if (op == 1) {
        const auto& c = gdd_fills[rng() % gdd_fills.size()];
        const Design ig = supply(c.igdd), f = supply(c.filler);
        const Design d = igdd_fill_gdd(ig, f, c.alpha);
        // Effective IGDD shape (g; h)^u; a GDD g^u reads as h = 0.
        const int u = c.igdd.type == RequestType::igdd ? c.igdd.u : static_cast<int>(c.igdd.groups.size());
        const int g = c.igdd.type == RequestType::igdd ? c.igdd.g : c.igdd.groups.front();
        const int h = c.igdd.type == RequestType::igdd ? c.igdd.h : 0;
        const int x = (g - h) / c.alpha;
        auto fs = sorted_sizes(f);
        const int ay = static_cast<int>(fs.size()) == x ? 0 : fs.back();
        const int n = u * x, w = h * (u - 1) + ay;
        std::vector<int> want(static_cast<std::size_t>(n), c.alpha);
        if (w > 0) want.push_back(w);
        std::sort(want.begin(), want.end());
        if (!verify_design(d)) o.fail(tag + "igdd_fill_gdd output invalid");
        if (sorted_sizes(d) != want) o.fail(tag + "igdd_fill_gdd type " + c.igdd.describe());
      } else if (op == 2) {
        const auto& r = inflations[rng() % inflations.size()];
        const int gi = 1 + static_cast<int>(rng() % 4);
        const Design base = supply(r);
        const Design d = inflate(base, gi, K3, shared().source(2));
        const int w = static_cast<int>(hole_points(base).size());
        std::vector<int> want;
        if (w >= 2) {
          want.assign(static_cast<std::size_t>(base.n_points - w), gi);
          want.push_back(gi * w);
        } else {
          want.assign(static_cast<std::size_t>(base.n_points), gi);
        }
        std::sort(want.begin(), want.end());
        if (!verify_design(d)) o.fail(tag + "inflate output invalid");
        if (sorted_sizes(d) != want) o.fail(tag + "inflate type for g=" + std::to_string(gi));
      } else {
        const Design base = resolvables[rng() % resolvables.size()]();
        const std::size_t classes = base.resolution->classes.size();
        const std::size_t r = 1 + rng() % classes;
        const Design d = projective_extend(base, r);
        if (!verify_design(d)) o.fail(tag + "projective_extend output invalid");
        if (d.n_points != base.n_points + static_cast<int>(r)) o.fail(tag + "projective_extend point count");
        if (std::holds_alternative<PbdKind>(base.kind)) {
          if (hole_points(d).size() != r) o.fail(tag + "projective_extend hole size");
        } else if (group_sizes(d).size() != group_sizes(base).size() + 1 || group_sizes(d).back() != static_cast<int>(r)) {
          o.fail(tag + "projective_extend new group");
        }
      }
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.pass) {
    std::ostringstream s;
    s << "50 applications: " << counts[0] << " igdd_fill, " << counts[1] << " igdd_fill_gdd, " << counts[2]
      << " inflate, " << counts[3] << " projective_extend";
    o.detail = s.str();
  }
  return o;
}

// ---------------------------------------------------------------- 5

Outcome equality_case() {
  Outcome o;
  const Design d = projective_extend(affine_plane(3));
  const PointSet hole = hole_points(d);
  const std::set<Point> H(hole.begin(), hole.end());
  if (!verify_design(d)) o.fail("does not verify");
  if (d.n_points != 13 || hole.size() != 4) o.fail("not an IPBD((13;4))");
  if (d.block_sizes.sizes().size() != 1 || d.block_sizes.k_min() != 4) o.fail("K is not {4}");
  for (const auto& b : d.blocks) {
    if (b.size() != 4) o.fail("a block has size " + std::to_string(b.size()));
    if (std::none_of(b.begin(), b.end(), [&](Point p) { return H.count(p) > 0; })) o.fail("a block misses the hole");
  }
  if (!blocks_meet_hole(d)) o.fail("blocks_meet_hole is false");
  if (o.pass) o.detail = std::to_string(d.blocks.size()) + " blocks of size 4, all meeting the hole";
  return o;
}

// ---------------------------------------------------------------- 6

void partitions(int left, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (int p = std::min(left, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(left - p, p, cur, out);
    cur.pop_back();
  }
}

Outcome lattice_arithmetic() {
  Outcome o;
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(12, 12, cur, parts);
  int graphs = 0;
  for (const auto& cliques : parts) {
    std::vector<i64> deg;
    i64 m = 0;
    for (int s : cliques) {
      for (int i = 0; i < s; ++i) deg.push_back(s - 1);
      m += static_cast<i64>(s) * (s - 1) / 2;
    }
    if (m == 0) continue;
    ++graphs;
    // a = 2m always works (the sum of all rows), so 2m bounds the scan.
    const i64 got = alpha_star(deg, m), want = oracle::alpha_star_bfs(deg, m, 2 * m);
    if (got != want) {
      std::ostringstream s;
      s << "alpha* on cliques";
      for (int c : cliques) s << " " << c;
      s << ": " << got << " vs " << want;
      o.fail(s.str());
    }
  }
  int triples = 0;
  for (i64 A = 1; A <= 8; ++A) {
    for (i64 g = 1; g <= 4; ++g) {
      for (i64 x = 1; x <= 12; ++x, ++triples) {
        const auto want = oracle::hole_sums_enum(A, g, x);
        if (realizable_hole_sums(A, g, x) != std::vector<i64>(want.begin(), want.end())) {
          o.fail("hole sums at A=" + std::to_string(A) + " gamma=" + std::to_string(g) + " x*=" + std::to_string(x));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(graphs) + " clique unions, " + std::to_string(triples) + " hole-sum triples";
  return o;
}

// ---------------------------------------------------------------- 7

Outcome crt_planner() {
  Outcome o;
  int plans = 0, infeasible = 0;
  for (const auto& s : std::vector<std::vector<int>>{{3}, {4, 7}}) {
    const i64 alpha = oracle::alpha_of(s), beta = oracle::beta_of(s), gamma = beta / alpha;
    for (i64 M1 : {6, 12}) {
      for (i64 n0 = 0; n0 < M1; ++n0) {
        for (i64 s0 = 0; s0 < M1; ++s0) {
          // GDD(alpha^n (alpha s)^1) global condition on a concrete lift.
          const i64 pairs = alpha * n0 * (alpha * (n0 - 1) + 2 * alpha * s0);
          const bool admissible = oracle::md(pairs, beta) == 0;
          if (!admissible) {
            ++infeasible;
            try {
              crt_plan(n0, s0, M1, alpha, gamma);
              o.fail("plan returned for inadmissible residues");
            } catch (const PlanInfeasible&) {
            }
            continue;
          }
          CongruencePlan p;
          try {
            p = crt_plan(n0, s0, M1, alpha, gamma);
          } catch (const std::exception& e) {
            o.fail(std::string("no plan for admissible residues: ") + e.what());
            continue;
          }
          ++plans;
          if (const auto bad = check_plan(p); !bad.empty()) o.fail("check_plan: " + bad);
          // Every lift of the planned residues reproduces n0 and s0.
          for (i64 a = 0; a < 3; ++a) {
            for (i64 b = 0; b < 3; ++b) {
              for (i64 c = 0; c < 3; ++c) {
                const i64 u = p.u + a * M1, h = p.h + b * M1, y = p.y + c * M1;
                const i64 x = 1 - 2 * y;
                if (oracle::md(u * x - n0, M1) != 0) o.fail("n = ux fails on a lift");
                if (oracle::md(h * (u - 1) + alpha * y - alpha * s0, M1) != 0) {
                  o.fail("w = h(u-1) + alpha y fails on a lift");
                }
                if (oracle::md(alpha * x + h - p.g, M1) != 0) o.fail("g = alpha x + h fails on a lift");
              }
            }
          }
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(plans) + " plans, " + std::to_string(infeasible) + " inadmissible pairs rejected";
  return o;
}

// ---------------------------------------------------------------- 8

bool is_c4(const PackingStats& st) {
  if (st.leave.size() != 4 || st.leave_degrees != std::vector<int>{2, 2, 2, 2}) return false;
  // Four vertices of degree two on four edges form one 4-cycle.
  std::set<int> vs;
  for (const auto& e : st.leave) {
    vs.insert(e.first);
    vs.insert(e.second);
  }
  return vs.size() == 4;
}

Outcome applications() {
  Outcome o;
  std::vector<std::string> notes;
  const auto p11 = best_packing(11, 3, shared());
  if (!verify_design(p11.design) || p11.stats.blocks != 17 || p11.stats.johnson != 18 ||
      p11.stats.deficiency != 1 || !is_c4(p11.stats)) {
    o.fail("(11,3,1)-packing: " + std::to_string(p11.stats.blocks) + " blocks");
  }
  const auto p5 = best_packing(5, 3, shared());
  if (!verify_design(p5.design) || p5.stats.blocks != 2 || !is_c4(p5.stats)) {
    o.fail("(5,3,1)-packing: " + std::to_string(p5.stats.blocks) + " blocks");
  }
  const Design tpl = supply(IngredientRequest::ipbd(13, 4, BlockSizeSet::from({4})));
  const auto L = imols_from_ipbd(tpl, 2);
  if (L.count() != 2 || !verify_latin(L) || !verify_orthogonal(L)) o.fail("2-IMOLS(13;4) not orthogonal");

  // The displayed side-5 square with hole {1,2}, symbols shifted to 0..4.
  const int E = kEmptyCell;
  LatinSquareSet ils;
  ils.n = 5;
  ils.m = 2;
  ils.hole = {0, 1};
  ils.squares = {{E, E, 2, 3, 4,  //
                  E, E, 3, 4, 2,  //
                  2, 3, 0, 1, 4,  //
                  3, 4, 1, 2, 0,  //
                  4, 2, 3, 0, 1}};
  const Report r = verify_latin(ils);
  if (!r) {
    o.fail(std::string(o.pass ? "packings and 2-IMOLS(13;4) pass; " : "") +
           "displayed 5x5 hole-2 square fails verify_latin: " + r.summary());
  }
  if (o.pass) o.detail = "packings 17 and 2 blocks with C4 leaves, 2-IMOLS(13;4), displayed square";
  return o;
}

// ---------------------------------------------------------------- 9

Design mutate(Design d, std::mt19937_64& rng) {
  const std::size_t b = rng() % d.blocks.size();
  switch (rng() % 4) {
    case 0: {  // move one point of a block
      auto& blk = d.blocks[b];
      blk[rng() % blk.size()] = static_cast<Point>(rng() % d.n_points);
      break;
    }
    case 1: d.blocks.erase(d.blocks.begin() + static_cast<std::ptrdiff_t>(b)); break;
    case 2: d.blocks.push_back(d.blocks[b]); break;
    default: {  // swap points between two blocks
      const std::size_t c = rng() % d.blocks.size();
      std::swap(d.blocks[b][rng() % d.blocks[b].size()], d.blocks[c][rng() % d.blocks[c].size()]);
    }
  }
  return d;
}

Outcome oracle_independence() {
  Outcome o;
  const auto K3 = BlockSizeSet::from({3});
  std::vector<Design> pool = {
      projective_plane(2),
      steiner_triple(9),
      steiner_triple(13),
      steiner_triple(15),
      affine_plane(4),
      transversal_design(3, 4),
      transversal_design(4, 4),
      one_factorization(8),
      supply(IngredientRequest::ipbd(7, 3, K3)),
      supply(IngredientRequest::ipbd(13, 3, K3)),
      supply(IngredientRequest::ipbd(15, 7, K3)),
      supply(IngredientRequest::gdd({2, 2, 2, 4}, K3)),
      supply(IngredientRequest::igdd(3, 1, 4, BlockSizeSet::from({4}))),
      supply(IngredientRequest::hgdd(3, 1, 3, K3)),
      best_packing(11, 3, shared()).design,
      best_covering(9, 3, shared()).design,
  };
  std::mt19937_64 rng(77);
  int valid = 0, invalid = 0;
  for (int t = 0; t < 200; ++t) {
    const Design& base = pool[rng() % pool.size()];
    Design d = relabel(base, oracle::random_perm(base.n_points, rng));
    if (t % 2 == 1) d = mutate(std::move(d), rng);
    const bool got = verify_design(d).valid;
    const bool want = oracle::naive_verify(d).valid;
    (want ? valid : invalid)++;
    if (got != want) o.fail("disagreement on design " + std::to_string(t) + " (" + kind_tag(d.kind) + ")");
  }
  if (o.pass) o.detail = std::to_string(valid) + " valid, " + std::to_string(invalid) + " invalid, all agree";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "admissibility suite", admissibility_suite},
      {2, "exception list by exhaustive search", exception_list},
      {3, "generators verify", generators},
      {4, "construction bookkeeping", bookkeeping},
      {5, "projective extension equality case", equality_case},
      {6, "alpha* and hole-sum arithmetic", lattice_arithmetic},
      {7, "congruence planner", crt_planner},
      {8, "applications", applications},
      {9, "verifier against naive oracle", oracle_independence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::replace(o.detail.begin(), o.detail.end(), '\n', ';');
    std::printf("criterion %d %s: %s (tolerance exact, %.2f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
