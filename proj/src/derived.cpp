#include "ipbd/derived.hpp"

#include <algorithm>
#include <map>

#include "ipbd/generate.hpp"

namespace ipbd {

namespace {

std::string str(long long x) { return std::to_string(x); }

std::vector<int> uniform(int g, int count) {
  return std::vector<int>(static_cast<std::size_t>(std::max(count, 0)), g);
}

std::vector<int> with_last(std::vector<int> groups, int last) {
  groups.push_back(last);
  return groups;
}

Design need(Resolver& R, const IngredientRequest& req) {
  auto d = R.resolve(req);
  if (!d) throw IngredientError(req.describe(), "not resolved");
  return *d;
}

// True when the last group of `groups` is the distinguished hole.
bool has_hole(const Partition& groups) {
  if (groups.size() == 1) return true;
  return std::any_of(groups.begin(), groups.end(),
                     [&](const PointSet& g) { return g.size() != groups.front().size(); });
}

void place_on(const Design& sub, const PointSet& points, std::vector<Block>& out) {
  for (const auto& b : sub.blocks) {
    Block nb;
    for (Point p : b) nb.push_back(points[p]);
    std::sort(nb.begin(), nb.end());
    out.push_back(std::move(nb));
  }
}

Design template_for(const IngredientRequest& req, Resolver& R, int k) {
  Design tpl = need(R, req);
  for (const auto& b : tpl.blocks) {
    if (static_cast<int>(b.size()) != k) {
      throw PreconditionError("template " + req.describe() + " has a block size other than " + str(k));
    }
  }
  return tpl;
}

}  // namespace

LatinSquareSet imols_from_ipbd(const Design& tpl, int t) {
  if (!std::holds_alternative<IpbdKind>(tpl.kind) && !std::holds_alternative<PbdKind>(tpl.kind)) {
    throw PreconditionError("imols_from_ipbd needs an IPBD or PBD template");
  }
  if (t < 1) throw PreconditionError("imols_from_ipbd needs t >= 1");
  if (tpl.lambda != 1) throw PreconditionError("imols_from_ipbd needs a lambda = 1 template");
  if (const Report rep = verify_design(tpl); !rep) {
    throw PreconditionError("imols_from_ipbd template is invalid: " + rep.summary());
  }
  std::map<int, LatinSquareSet> local;
  for (const auto& b : tpl.blocks) {
    const int k = static_cast<int>(b.size());
    if (local.count(k)) continue;
    if (k - 2 < t || mols_available(k) == 0) {
      throw PreconditionError("block size " + str(k) + " admits no " + str(t) +
                              " idempotent MOLS here (needs a prime power k with t <= k-2)");
    }
    local.emplace(k, idempotent_mols(k, t));
  }
  const int n = tpl.n_points;
  PointSet hole = hole_points(tpl);
  std::sort(hole.begin(), hole.end());
  const int m = static_cast<int>(hole.size());
  std::vector<char> in_hole(static_cast<std::size_t>(n), 0);
  if (m >= 2) {
    for (Point p : hole) in_hole[p] = 1;
  }
  LatinSquareSet out;
  out.n = n;
  out.m = m;
  out.hole = hole;
  out.squares.assign(static_cast<std::size_t>(t),
                     std::vector<int>(static_cast<std::size_t>(n) * n, kEmptyCell));
  for (auto& sq : out.squares) {
    for (int x = 0; x < n; ++x) {
      if (!in_hole[x]) sq[static_cast<std::size_t>(x) * n + x] = x;
    }
  }
  for (const auto& b : tpl.blocks) {
    const LatinSquareSet& M = local.at(static_cast<int>(b.size()));
    const int k = static_cast<int>(b.size());
    for (int s = 0; s < t; ++s) {
      auto& sq = out.squares[s];
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (i != j) sq[static_cast<std::size_t>(b[i]) * n + b[j]] = b[M.at(s, i, j)];
        }
      }
    }
  }
  require_valid(out, str(t) + "-IMOLS(" + str(n) + ";" + str(m) + ")");
  return out;
}

std::string PackingRecipe::describe() const {
  return "(" + str(v) + "," + str(k) + ",1)-packing from " + template_request.describe() +
         (group_fill == GroupFill::fill ? ", groups filled" : "");
}

std::string CoveringRecipe::describe() const {
  return "(" + str(v) + "," + str(k) + ",1)-covering from " + template_request.describe();
}

std::vector<PackingRecipe> packing_recipes(int v, int k) {
  if (v < 0 || k < 2) throw PreconditionError("packing needs v >= 0 and k >= 2");
  const BlockSizeSet K = BlockSizeSet::from({k});
  std::vector<IngredientRequest> tpls;
  if (k == 3) {
    switch (v % 6) {
      case 1:
      case 3:
        tpls.push_back(IngredientRequest::pbd(v, K));
        break;
      case 0:
      case 2:
        // The groups of GDD(2^(v/2)) leave a perfect matching.
        tpls.push_back(IngredientRequest::gdd(uniform(2, v / 2), K));
        break;
      case 4:
        tpls.push_back(IngredientRequest::gdd(with_last(uniform(2, (v - 4) / 2), 4), K));
        break;
      case 5:
        if (v > 5) tpls.push_back(IngredientRequest::ipbd(v, 5, K));
        break;
    }
  } else if (admissible_pbd(v, K)) {
    tpls.push_back(IngredientRequest::pbd(v, K));
  }
  tpls.push_back(IngredientRequest::gdd({v}, K));
  std::vector<PackingRecipe> out;
  for (auto& t : tpls) out.push_back(PackingRecipe{v, k, t, GroupFill::leave});
  return out;
}

std::vector<CoveringRecipe> covering_recipes(int v, int k) {
  if (v < k || k < 2) throw PreconditionError("covering needs v >= k >= 2");
  const BlockSizeSet K = BlockSizeSet::from({k});
  std::vector<IngredientRequest> tpls;
  if (k == 3) {
    const int r = v % 6;
    if (r == 1 || r == 3) tpls.push_back(IngredientRequest::pbd(v, K));
    if (v <= 8) tpls.push_back(IngredientRequest::gdd({v}, K));
    if (r == 0 && v >= 18) tpls.push_back(IngredientRequest::gdd(uniform(6, v / 6), K));
    if (r == 4 && v >= 22) {
      tpls.push_back(IngredientRequest::gdd(with_last(uniform(6, (v - 4) / 6), 4), K));
    }
    if (r == 2 && v >= 26) {
      tpls.push_back(IngredientRequest::gdd(with_last(uniform(6, (v - 8) / 6), 8), K));
    }
    if (r == 5 && v > 5) tpls.push_back(IngredientRequest::ipbd(v, 5, K));
    if (r == 0 || r == 2) tpls.push_back(IngredientRequest::gdd(uniform(2, v / 2), K));
    if (r == 4) tpls.push_back(IngredientRequest::gdd(with_last(uniform(2, (v - 4) / 2), 4), K));
  } else if (admissible_pbd(v, K)) {
    tpls.push_back(IngredientRequest::pbd(v, K));
  } else if (k == 4 && admissible_ipbd(v, 22, K)) {
    // No construction ships for this template; it resolves only when a
    // catalog directory supplies it.
    tpls.push_back(IngredientRequest::ipbd(v, 22, K));
  }
  tpls.push_back(IngredientRequest::gdd({v}, K));
  std::vector<CoveringRecipe> out;
  for (auto& t : tpls) out.push_back(CoveringRecipe{v, k, t});
  return out;
}

PackingOutcome packing_from_template(const PackingRecipe& recipe, Resolver& R) {
  const int k = recipe.k;
  if (recipe.template_request.point_count() != recipe.v) {
    throw PreconditionError("template " + recipe.template_request.describe() + " is not on " +
                            str(recipe.v) + " points");
  }
  const Design tpl = template_for(recipe.template_request, R, k);
  const Partition groups = groups_of(tpl);
  const bool hole = has_hole(groups);
  if (hole && groups.size() >= 2) {
    const long long g = static_cast<long long>(groups.front().size());
    const long long h = static_cast<long long>(groups.back().size());
    if ((g - h) % (k - 1) != 0) {
      throw PreconditionError("packing template needs g = h mod (k-1)");
    }
  }
  Design out;
  out.n_points = recipe.v;
  out.kind = PackingKind{};
  out.block_sizes = BlockSizeSet::from({k});
  out.blocks = tpl.blocks;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const bool is_hole = hole && i + 1 == groups.size();
    const int s = static_cast<int>(groups[i].size());
    if (s < k || (!is_hole && recipe.group_fill == GroupFill::leave)) continue;
    place_on(need(R, IngredientRequest::packing(s, k)), groups[i], out.blocks);
  }
  out = normalize(out);
  out.provenance = recipe.describe();
  require_valid(out, out.provenance);
  return PackingOutcome{out, packing_stats(out), recipe.describe()};
}

CoveringOutcome covering_from_template(const CoveringRecipe& recipe, Resolver& R) {
  const int k = recipe.k;
  if (recipe.template_request.point_count() != recipe.v) {
    throw PreconditionError("template " + recipe.template_request.describe() + " is not on " +
                            str(recipe.v) + " points");
  }
  const Design tpl = template_for(recipe.template_request, R, k);
  const Partition groups = groups_of(tpl);
  Design out;
  out.n_points = recipe.v;
  out.kind = CoveringKind{};
  out.block_sizes = BlockSizeSet::from({k});
  out.blocks = tpl.blocks;
  for (const auto& grp : groups) {
    const int s = static_cast<int>(grp.size());
    if (s <= 1) continue;
    if (s >= k) {
      place_on(need(R, IngredientRequest::covering(s, k)), grp, out.blocks);
      continue;
    }
    Block b = grp;
    for (Point p = 0; p < recipe.v && static_cast<int>(b.size()) < k; ++p) {
      if (std::find(grp.begin(), grp.end(), p) == grp.end()) b.push_back(p);
    }
    std::sort(b.begin(), b.end());
    out.blocks.push_back(std::move(b));
  }
  out = normalize(out);
  out.provenance = recipe.describe();
  require_valid(out, out.provenance);
  return CoveringOutcome{out, covering_stats(out), recipe.describe()};
}

namespace {

template <class Outcome, class Recipe, class Build>
Outcome first_success(const std::vector<Recipe>& recipes, Build build, const std::string& what) {
  std::string failures;
  for (const auto& r : recipes) {
    try {
      return build(r);
    } catch (const IngredientError& e) {
      failures += "\n  " + r.describe() + ": " + e.what();
    } catch (const PreconditionError& e) {
      failures += "\n  " + r.describe() + ": " + e.what();
    }
  }
  throw IngredientError(what, "every recipe failed" + failures);
}

}  // namespace

PackingOutcome best_packing(int v, int k, Resolver& R) {
  return first_success<PackingOutcome>(
      packing_recipes(v, k), [&](const PackingRecipe& r) { return packing_from_template(r, R); },
      "packing(" + str(v) + "," + str(k) + ")");
}

CoveringOutcome best_covering(int v, int k, Resolver& R) {
  return first_success<CoveringOutcome>(
      covering_recipes(v, k), [&](const CoveringRecipe& r) { return covering_from_template(r, R); },
      "covering(" + str(v) + "," + str(k) + ")");
}

}  // namespace ipbd
