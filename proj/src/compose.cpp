#include "ipbd/compose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ipbd/verify.hpp"

namespace ipbd {

namespace {

std::string str(long long x) { return std::to_string(x); }

// Exponent notation with sizes ascending, e.g. "1^6 5^1".
std::string type_text(const std::vector<int>& sizes) {
  std::map<int, int> freq;
  for (int s : sizes) {
    if (s > 0) ++freq[s];
  }
  std::string out;
  for (auto [s, c] : freq) {
    if (!out.empty()) out += " ";
    out += str(s) + "^" + str(c);
  }
  return out.empty() ? "0^0" : out;
}

std::vector<int> sorted_nonzero(std::vector<int> sizes) {
  std::erase(sizes, 0);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

bool blocks_within(const Design& d, const BlockSizeSet& K) {
  return std::all_of(d.blocks.begin(), d.blocks.end(),
                     [&](const Block& b) { return K.contains(static_cast<int>(b.size())); });
}

BlockSizeSet merge(const BlockSizeSet& a, const BlockSizeSet& b) {
  std::vector<int> all(a.sizes().begin(), a.sizes().end());
  all.insert(all.end(), b.sizes().begin(), b.sizes().end());
  if (all.empty()) return {};
  return BlockSizeSet::from(std::move(all));
}

BlockSizeSet sizes_used(const Design& d, const BlockSizeSet& fallback) {
  std::vector<int> s;
  for (const auto& b : d.blocks) s.push_back(static_cast<int>(b.size()));
  if (s.empty()) return fallback;
  return BlockSizeSet::from(std::move(s));
}

Design finish(Design d, const std::string& what) {
  d = normalize(d);
  d.provenance = what;
  require_valid(d, what);
  return d;
}

void require_input(const Design& d, const std::string& what) {
  const Report rep = verify_design(d);
  if (!rep) throw PreconditionError(what + " is not a valid design: " + rep.summary());
}

// Maps the groups of `ingredient` onto `targets` of equal sizes and returns
// its blocks in target labels. Groups are paired size by size in order.
std::vector<Block> place(const Design& ingredient, const std::vector<PointSet>& targets) {
  const Partition groups = groups_of(ingredient);
  std::map<std::size_t, std::vector<const PointSet*>> by_size;
  for (const auto& t : targets) {
    if (!t.empty()) by_size[t.size()].push_back(&t);
  }
  std::vector<Point> image(static_cast<std::size_t>(ingredient.n_points), -1);
  std::map<std::size_t, std::size_t> used;
  for (const auto& grp : groups) {
    if (grp.empty()) continue;
    auto& pool = by_size[grp.size()];
    std::size_t& next = used[grp.size()];
    if (next >= pool.size()) {
      throw CertificationError("ingredient group type does not match its placement");
    }
    const PointSet& target = *pool[next++];
    for (std::size_t i = 0; i < grp.size(); ++i) image[grp[i]] = target[i];
  }
  std::vector<Block> out;
  out.reserve(ingredient.blocks.size());
  for (const auto& b : ingredient.blocks) {
    Block nb;
    for (Point p : b) nb.push_back(image[p]);
    std::sort(nb.begin(), nb.end());
    out.push_back(std::move(nb));
  }
  return out;
}

// Ingredient lookups within one operator call share a local cache.
class Supplier {
 public:
  Supplier(const IngredientSource& source, std::string op) : source_(source), op_(std::move(op)) {}

  const Design& get(const IngredientRequest& req) {
    const std::string key = req.describe();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Design d;
    try {
      d = source_(req);
    } catch (const IngredientError& e) {
      throw IngredientError(key, op_ + " needs this ingredient (" + e.what() + ")");
    }
    if (!req.matches(d)) throw IngredientError(key, "source returned a design of another shape");
    return cache_.emplace(key, std::move(d)).first->second;
  }

 private:
  const IngredientSource& source_;
  std::string op_;
  std::map<std::string, Design> cache_;
};

struct Holey {
  int g = 0;
  int h = 0;
  Partition groups;
  Partition holes;
};

// IGDD((g;h)^u) data from an IGDD, GDD or TD with uniform groups.
Holey holey_of(const Design& d, const std::string& what) {
  Holey out;
  if (const auto* ig = std::get_if<IgddKind>(&d.kind)) {
    out.groups = ig->groups;
    out.holes = ig->holes;
  } else if (std::holds_alternative<GddKind>(d.kind) || std::holds_alternative<TdKind>(d.kind)) {
    out.groups = groups_of(d);
    out.holes.assign(out.groups.size(), {});
  } else {
    throw PreconditionError(what + " must be an IGDD, GDD or TD");
  }
  if (out.groups.empty()) throw PreconditionError(what + " has no groups");
  out.g = static_cast<int>(out.groups.front().size());
  out.h = static_cast<int>(out.holes.front().size());
  for (std::size_t i = 0; i < out.groups.size(); ++i) {
    if (static_cast<int>(out.groups[i].size()) != out.g ||
        static_cast<int>(out.holes[i].size()) != out.h) {
      throw PreconditionError(what + " must have type (g;h)^u");
    }
    std::sort(out.groups[i].begin(), out.groups[i].end());
    std::sort(out.holes[i].begin(), out.holes[i].end());
  }
  return out;
}

PointSet without(const PointSet& all, const PointSet& removed) {
  PointSet out;
  for (Point p : all) {
    if (std::find(removed.begin(), removed.end(), p) == removed.end()) out.push_back(p);
  }
  return out;
}

PointSet range(Point first, int count) {
  PointSet out(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(out.begin(), out.end(), first);
  return out;
}

// Index of the filler group that receives the hole, given that the filler
// has `plain` groups of size `size` plus possibly one more. Returns -1 when
// there is no extra group.
int extra_group(const Partition& groups, std::size_t plain, std::size_t size,
                const std::string& what) {
  if (groups.size() == plain) {
    for (const auto& g : groups) {
      if (g.size() != size) throw PreconditionError(what + " has the wrong group type");
    }
    return -1;
  }
  if (groups.size() != plain + 1) throw PreconditionError(what + " has the wrong number of groups");
  int extra = -1;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() != size) {
      if (extra >= 0) throw PreconditionError(what + " has the wrong group type");
      extra = static_cast<int>(i);
    }
  }
  return extra >= 0 ? extra : static_cast<int>(groups.size()) - 1;
}

}  // namespace

IngredientRequest IngredientRequest::pbd(int v, const BlockSizeSet& K, int lambda) {
  IngredientRequest r;
  r.type = RequestType::pbd;
  r.v = v;
  r.K = K;
  r.lambda = lambda;
  return r;
}

IngredientRequest IngredientRequest::ipbd(int v, int w, const BlockSizeSet& K, int lambda) {
  IngredientRequest r;
  r.type = RequestType::ipbd;
  r.v = v;
  r.w = w;
  r.K = K;
  r.lambda = lambda;
  return r;
}

IngredientRequest IngredientRequest::gdd(std::vector<int> groups, const BlockSizeSet& K) {
  IngredientRequest r;
  r.type = RequestType::gdd;
  r.groups = sorted_nonzero(std::move(groups));
  r.K = K;
  return r;
}

IngredientRequest IngredientRequest::igdd(int g, int h, int u, const BlockSizeSet& K) {
  IngredientRequest r;
  r.type = RequestType::igdd;
  r.g = g;
  r.h = h;
  r.u = u;
  r.K = K;
  return r;
}

IngredientRequest IngredientRequest::hgdd(int u, int h, int m, const BlockSizeSet& K) {
  IngredientRequest r;
  r.type = RequestType::hgdd;
  r.u = u;
  r.h = h;
  r.m = m;
  r.K = K;
  return r;
}

IngredientRequest IngredientRequest::packing(int v, int k) {
  IngredientRequest r;
  r.type = RequestType::packing;
  r.v = v;
  r.K = BlockSizeSet::from({k});
  return r;
}

IngredientRequest IngredientRequest::covering(int v, int k) {
  IngredientRequest r;
  r.type = RequestType::covering;
  r.v = v;
  r.K = BlockSizeSet::from({k});
  return r;
}

std::string IngredientRequest::describe() const {
  const std::string k = K.to_string();
  const std::string lam = lambda == 1 ? "" : "_" + str(lambda);
  switch (type) {
    case RequestType::pbd:
      return "PBD" + lam + "(" + str(v) + "," + k + ")";
    case RequestType::ipbd:
      return "IPBD" + lam + "((" + str(v) + ";" + str(w) + ")," + k + ")";
    case RequestType::gdd:
      return "GDD(" + type_text(groups) + "," + k + ")";
    case RequestType::igdd:
      return "IGDD((" + str(g) + ";" + str(h) + ")^" + str(u) + "," + k + ")";
    case RequestType::hgdd:
      return "HGDD(" + str(u) + "x" + str(h) + "^" + str(m) + "," + k + ")";
    case RequestType::packing:
      return "packing(" + str(v) + "," + str(K.k_min()) + ")";
    case RequestType::covering:
      return "covering(" + str(v) + "," + str(K.k_min()) + ")";
  }
  return "";
}

int IngredientRequest::point_count() const {
  switch (type) {
    case RequestType::gdd:
      return std::accumulate(groups.begin(), groups.end(), 0);
    case RequestType::igdd:
      return g * u;
    case RequestType::hgdd:
      return u * h * m;
    default:
      return v;
  }
}

bool IngredientRequest::matches(const Design& d) const {
  if (d.n_points != point_count() || d.lambda != lambda || !blocks_within(d, K)) return false;
  switch (type) {
    case RequestType::pbd:
      return std::holds_alternative<PbdKind>(d.kind) ||
             (std::holds_alternative<IpbdKind>(d.kind) && hole_points(d).size() <= 1);
    case RequestType::ipbd:
      if (const auto* ip = std::get_if<IpbdKind>(&d.kind)) {
        return static_cast<int>(ip->hole.size()) == w || (w <= 1 && ip->hole.size() <= 1);
      }
      return w <= 1 && std::holds_alternative<PbdKind>(d.kind);
    case RequestType::gdd: {
      if (std::holds_alternative<IgddKind>(d.kind) || std::holds_alternative<HgddKind>(d.kind) ||
          std::holds_alternative<PackingKind>(d.kind) ||
          std::holds_alternative<CoveringKind>(d.kind)) {
        return false;
      }
      std::vector<int> sizes;
      for (const auto& grp : groups_of(d)) sizes.push_back(static_cast<int>(grp.size()));
      return sorted_nonzero(sizes) == groups;
    }
    case RequestType::igdd:
      if (const auto* ig = std::get_if<IgddKind>(&d.kind)) {
        if (static_cast<int>(ig->groups.size()) != u) return false;
        for (std::size_t i = 0; i < ig->groups.size(); ++i) {
          if (static_cast<int>(ig->groups[i].size()) != g ||
              static_cast<int>(ig->holes[i].size()) != h) {
            return false;
          }
        }
        return true;
      }
      return h == 0 && IngredientRequest::gdd(std::vector<int>(static_cast<std::size_t>(u), g), K)
                           .matches(d);
    case RequestType::hgdd:
      if (const auto* hg = std::get_if<HgddKind>(&d.kind)) {
        return hg->u == u && hg->h == h && hg->m == m;
      }
      return false;
    case RequestType::packing:
      return std::holds_alternative<PackingKind>(d.kind) || std::holds_alternative<PbdKind>(d.kind);
    case RequestType::covering:
      return std::holds_alternative<CoveringKind>(d.kind) ||
             std::holds_alternative<PbdKind>(d.kind);
  }
  return false;
}

Admissibility admissible(const IngredientRequest& r) {
  switch (r.type) {
    case RequestType::pbd:
      if (r.v <= 1) return Admissibility::ok();
      if (r.lambda == 1) return admissible_pbd(r.v, r.K);
      return admissible_ipbd_lambda(r.v, 1, r.K, r.lambda);
    case RequestType::ipbd:
      if (r.w <= 1 && r.v <= 1) return Admissibility::ok();
      return admissible_ipbd_lambda(r.v, std::max(r.w, 1), r.K, r.lambda);
    case RequestType::gdd: {
      const long long v = r.point_count();
      const long long a = r.K.alpha(), b = r.K.beta();
      if (r.groups.size() <= 1) return Admissibility::ok();
      long long squares = 0;
      for (int g : r.groups) {
        if ((v - g) % a != 0) {
          return Admissibility::fail("local", "v - g = " + str(v - g) +
                                                  " is not 0 mod alpha = " + str(a) +
                                                  " for a group of size " + str(g));
        }
        squares += static_cast<long long>(g) * g;
      }
      if ((v * v - squares) % b != 0) {
        return Admissibility::fail("global", "v^2 - sum g^2 = " + str(v * v - squares) +
                                                 " is not 0 mod beta = " + str(b));
      }
      if (static_cast<int>(r.groups.size()) < r.K.k_min()) {
        return Admissibility::fail("range", "fewer groups than the smallest block size");
      }
      if (std::adjacent_find(r.groups.begin(), r.groups.end(), std::not_equal_to<>()) ==
          r.groups.end()) {
        return admissible_gdd_uniform(r.groups.front(), static_cast<long long>(r.groups.size()),
                                      r.K);
      }
      return Admissibility::ok();
    }
    case RequestType::igdd:
      if (r.u <= 1) return Admissibility::ok();
      return admissible_igdd(r.g, r.h, r.u, r.K);
    case RequestType::hgdd: {
      if (r.u <= 1 || r.m <= 1) return Admissibility::ok();
      // A row point meets h(m-1) points of other rows outside its column.
      const long long deg = static_cast<long long>(r.h) * (r.u - 1) * (r.m - 1);
      if (deg % r.K.alpha() != 0) {
        return Admissibility::fail("local", "h(u-1)(m-1) = " + str(deg) +
                                                " is not 0 mod alpha = " + str(r.K.alpha()));
      }
      const long long twice = static_cast<long long>(r.point_count()) * deg;
      if (twice % r.K.beta() != 0) {
        return Admissibility::fail("global", "uhm h(u-1)(m-1) = " + str(twice) +
                                                 " is not 0 mod beta = " + str(r.K.beta()));
      }
      if (std::min(r.u, r.m) < r.K.k_min()) {
        return Admissibility::fail("range", "a block meets every row and column at most once");
      }
      return Admissibility::ok();
    }
    case RequestType::packing:
    case RequestType::covering:
      if (r.v < r.K.k_min() && r.v > 1 && r.type == RequestType::covering) {
        return Admissibility::fail("range", "fewer points than the block size");
      }
      return Admissibility::ok();
  }
  return Admissibility::ok();
}

Partition groups_of(const Design& d) {
  if (std::holds_alternative<PbdKind>(d.kind)) {
    Partition out;
    for (Point p = 0; p < d.n_points; ++p) out.push_back({p});
    return out;
  }
  if (const auto* ip = std::get_if<IpbdKind>(&d.kind)) {
    PointSet hole = ip->hole;
    std::sort(hole.begin(), hole.end());
    Partition out;
    for (Point p = 0; p < d.n_points; ++p) {
      if (!std::binary_search(hole.begin(), hole.end(), p)) out.push_back({p});
    }
    if (!hole.empty()) out.push_back(std::move(hole));
    return out;
  }
  Partition groups;
  if (const auto* g = std::get_if<GddKind>(&d.kind)) groups = g->groups;
  else if (const auto* td = std::get_if<TdKind>(&d.kind)) groups = td->groups;
  else throw PreconditionError("design kind " + kind_tag(d.kind) + " has no group partition");
  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  std::erase_if(groups, [](const PointSet& grp) { return grp.empty(); });
  return groups;
}

Design wfc(const Design& master, const WeightAssignment& weights, const BlockSizeSet& K,
           const IngredientSource& source) {
  if (master.lambda != 1) throw PreconditionError("wfc needs a master with lambda = 1");
  if (static_cast<int>(weights.size()) != master.n_points) {
    throw PreconditionError("wfc needs one weight per master point");
  }
  if (std::any_of(weights.begin(), weights.end(), [](int w) { return w < 0; })) {
    throw PreconditionError("wfc weights must be nonnegative");
  }
  const Partition master_groups = groups_of(master);
  require_input(master, "wfc master");

  std::vector<PointSet> expand(weights.size());
  Point next = 0;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    expand[x] = range(next, weights[x]);
    next += weights[x];
  }
  Design out;
  out.n_points = next;
  out.block_sizes = K;
  Supplier supply(source, "wfc");
  for (const auto& b : master.blocks) {
    std::vector<PointSet> targets;
    std::vector<int> type;
    for (Point x : b) {
      if (weights[x] > 0) {
        targets.push_back(expand[x]);
        type.push_back(weights[x]);
      }
    }
    if (targets.size() <= 1) continue;
    const Design& ing = supply.get(IngredientRequest::gdd(type, K));
    for (auto& nb : place(ing, targets)) out.blocks.push_back(std::move(nb));
  }
  GddKind kind;
  for (const auto& grp : master_groups) {
    PointSet ng;
    for (Point x : grp) ng.insert(ng.end(), expand[x].begin(), expand[x].end());
    if (!ng.empty()) kind.groups.push_back(std::move(ng));
  }
  out.kind = std::move(kind);
  return finish(std::move(out), "wfc");
}

Design break_blocks(const Design& design, const BlockSizeSet& K, const IngredientSource& source) {
  require_input(design, "break_blocks input");
  Design out = design;
  out.blocks.clear();
  out.resolution.reset();
  out.block_sizes = K;
  Supplier supply(source, "break_blocks");
  for (const auto& b : design.blocks) {
    const int s = static_cast<int>(b.size());
    if (K.contains(s)) {
      out.blocks.push_back(b);
      continue;
    }
    const Design& ing = supply.get(IngredientRequest::pbd(s, K));
    std::vector<PointSet> targets;
    for (Point p : b) targets.push_back({p});
    for (auto& nb : place(ing, targets)) out.blocks.push_back(std::move(nb));
  }
  return finish(std::move(out), "break_blocks");
}

Design fill_hole(const Design& outer, const Design& inner) {
  const auto* ip = std::get_if<IpbdKind>(&outer.kind);
  if (!ip) throw PreconditionError("fill_hole needs an IPBD as the outer design");
  require_input(outer, "fill_hole outer design");
  require_input(inner, "fill_hole inner design");
  PointSet hole = ip->hole;
  std::sort(hole.begin(), hole.end());
  const int w = static_cast<int>(hole.size());
  if (inner.n_points != w) {
    throw PreconditionError("inner design has " + str(inner.n_points) + " points, hole has " +
                            str(w));
  }
  if (inner.lambda != outer.lambda) throw PreconditionError("fill_hole needs equal lambda");
  const bool inner_pbd = std::holds_alternative<PbdKind>(inner.kind);
  if (!inner_pbd && !std::holds_alternative<IpbdKind>(inner.kind)) {
    throw PreconditionError("inner design must be a PBD or an IPBD");
  }
  BlockSizeSet K = outer.block_sizes;
  std::string what = "fill_hole";
  if (!blocks_within(inner, outer.block_sizes)) {
    const bool hole_block = inner.blocks.size() == 1 && static_cast<int>(inner.blocks[0].size()) == w;
    if (!hole_block) throw PreconditionError("inner block sizes must lie in the outer K");
    K = merge(K, BlockSizeSet::from({w}));
    what += " (hole block of size " + str(w) + ")";
  }
  Design out = outer;
  out.block_sizes = K;
  out.resolution.reset();
  for (const auto& b : inner.blocks) {
    Block nb;
    for (Point p : b) nb.push_back(hole[p]);
    std::sort(nb.begin(), nb.end());
    out.blocks.push_back(std::move(nb));
  }
  if (inner_pbd) {
    out.kind = PbdKind{};
  } else {
    PointSet inner_hole;
    for (Point p : hole_points(inner)) inner_hole.push_back(hole[p]);
    out.kind = IpbdKind{std::move(inner_hole)};
  }
  return finish(std::move(out), what);
}

Design igdd_fill(const Design& igdd, const Design& filler) {
  require_input(igdd, "igdd_fill IGDD");
  require_input(filler, "igdd_fill filler");
  const Holey H = holey_of(igdd, "igdd_fill input");
  if (igdd.lambda != 1 || filler.lambda != 1) throw PreconditionError("igdd_fill needs lambda = 1");
  if (!std::holds_alternative<IpbdKind>(filler.kind) && !std::holds_alternative<PbdKind>(filler.kind)) {
    throw PreconditionError("igdd_fill filler must be an IPBD");
  }
  PointSet fhole = hole_points(filler);
  std::sort(fhole.begin(), fhole.end());
  const int x = filler.n_points, y = static_cast<int>(fhole.size());
  if (H.g - H.h != x - y) {
    throw PreconditionError("igdd_fill needs g-h = x-y, got " + str(H.g - H.h) + " and " +
                            str(x - y));
  }
  if (y < H.h) throw PreconditionError("igdd_fill needs y >= h");
  PointSet fall = range(0, x);
  const PointSet fplain = without(fall, fhole);
  const PointSet extra = range(igdd.n_points, y - H.h);

  Design out;
  out.n_points = igdd.n_points + y - H.h;
  out.block_sizes = merge(igdd.block_sizes, filler.block_sizes);
  out.blocks = igdd.blocks;
  PointSet hole = extra;
  for (std::size_t i = 0; i < H.groups.size(); ++i) {
    const PointSet plain = without(H.groups[i], H.holes[i]);
    std::vector<Point> image(static_cast<std::size_t>(x));
    for (std::size_t j = 0; j < fplain.size(); ++j) image[fplain[j]] = plain[j];
    for (std::size_t j = 0; j < fhole.size(); ++j) {
      image[fhole[j]] = static_cast<int>(j) < H.h ? H.holes[i][j] : extra[j - H.h];
    }
    for (const auto& b : filler.blocks) {
      Block nb;
      for (Point p : b) nb.push_back(image[p]);
      std::sort(nb.begin(), nb.end());
      out.blocks.push_back(std::move(nb));
    }
    hole.insert(hole.end(), H.holes[i].begin(), H.holes[i].end());
  }
  out.kind = IpbdKind{std::move(hole)};
  return finish(std::move(out), "igdd_fill");
}

Design igdd_fill_gdd(const Design& igdd, const Design& filler, int alpha) {
  require_input(igdd, "igdd_fill_gdd IGDD");
  require_input(filler, "igdd_fill_gdd filler");
  if (alpha < 1) throw PreconditionError("igdd_fill_gdd needs alpha >= 1");
  const Holey H = holey_of(igdd, "igdd_fill_gdd input");
  if ((H.g - H.h) % alpha != 0) throw PreconditionError("igdd_fill_gdd needs g-h = 0 mod alpha");
  const int x = (H.g - H.h) / alpha;
  const Partition fgroups = groups_of(filler);
  const int extra_idx = extra_group(fgroups, static_cast<std::size_t>(x),
                                    static_cast<std::size_t>(alpha), "igdd_fill_gdd filler");
  const int ay = extra_idx < 0 ? 0 : static_cast<int>(fgroups[extra_idx].size());
  if (ay % alpha != 0) throw PreconditionError("filler's last group must have size alpha y");
  if (H.h > ay) throw PreconditionError("igdd_fill_gdd needs h <= alpha y");
  const PointSet extra = range(igdd.n_points, ay - H.h);

  Design out;
  out.n_points = igdd.n_points + ay - H.h;
  out.block_sizes = merge(igdd.block_sizes, filler.block_sizes);
  out.blocks = igdd.blocks;
  GddKind kind;
  PointSet big = extra;
  for (std::size_t i = 0; i < H.groups.size(); ++i) {
    const PointSet plain = without(H.groups[i], H.holes[i]);
    std::vector<PointSet> targets;
    for (int c = 0; c < x; ++c) {
      PointSet part(plain.begin() + c * alpha, plain.begin() + (c + 1) * alpha);
      kind.groups.push_back(part);
      targets.push_back(std::move(part));
    }
    // Reorder so that place() pairs the extra group with the hole part.
    std::vector<Point> image(static_cast<std::size_t>(filler.n_points));
    std::size_t next = 0;
    for (std::size_t gi = 0; gi < fgroups.size(); ++gi) {
      const PointSet& src = fgroups[gi];
      if (static_cast<int>(gi) == extra_idx) {
        for (std::size_t j = 0; j < src.size(); ++j) {
          image[src[j]] = static_cast<int>(j) < H.h ? H.holes[i][j] : extra[j - H.h];
        }
      } else {
        const PointSet& dst = targets[next++];
        for (std::size_t j = 0; j < src.size(); ++j) image[src[j]] = dst[j];
      }
    }
    for (const auto& b : filler.blocks) {
      Block nb;
      for (Point p : b) nb.push_back(image[p]);
      std::sort(nb.begin(), nb.end());
      out.blocks.push_back(std::move(nb));
    }
    big.insert(big.end(), H.holes[i].begin(), H.holes[i].end());
  }
  if (!big.empty()) kind.groups.push_back(std::move(big));
  out.kind = std::move(kind);
  return finish(std::move(out), "igdd_fill_gdd");
}

Design projective_extend(const Design& resolvable, std::optional<std::size_t> classes) {
  require_input(resolvable, "projective_extend input");
  if (!resolvable.resolution) throw PreconditionError("projective_extend needs a resolution");
  const auto& cls = resolvable.resolution->classes;
  for (const auto& c : cls) {
    if (c.kind != ClassKind::full) {
      throw PreconditionError("projective_extend needs full parallel classes");
    }
  }
  const std::size_t r = classes.value_or(cls.size());
  if (r > cls.size()) {
    throw PreconditionError("only " + str(static_cast<long long>(cls.size())) +
                            " parallel classes are available");
  }
  Design out = resolvable;
  out.n_points = resolvable.n_points + static_cast<int>(r);
  out.resolution.reset();
  for (std::size_t c = 0; c < r; ++c) {
    const Point ideal = resolvable.n_points + static_cast<int>(c);
    for (std::size_t b : cls[c].blocks) out.blocks[b].push_back(ideal);
  }
  const PointSet added = range(resolvable.n_points, static_cast<int>(r));
  if (std::holds_alternative<PbdKind>(resolvable.kind)) {
    out.kind = IpbdKind{added};
  } else if (std::holds_alternative<GddKind>(resolvable.kind) ||
             std::holds_alternative<TdKind>(resolvable.kind)) {
    GddKind kind{groups_of(resolvable)};
    if (!added.empty()) kind.groups.push_back(added);
    out.kind = std::move(kind);
  } else {
    throw PreconditionError("projective_extend needs a resolvable PBD, GDD or TD");
  }
  out.block_sizes = sizes_used(out, resolvable.block_sizes);
  return finish(std::move(out), "projective_extend");
}

Design fill_groups_with_ipbds(const Design& gdd, int extra, const BlockSizeSet& K,
                              const IngredientSource& source) {
  require_input(gdd, "fill_groups_with_ipbds input");
  if (gdd.lambda != 1) throw PreconditionError("fill_groups_with_ipbds needs lambda = 1");
  if (extra < 0) throw PreconditionError("fill_groups_with_ipbds needs extra >= 0");
  const Partition groups = groups_of(gdd);
  if (groups.empty()) throw PreconditionError("fill_groups_with_ipbds needs a group");
  const PointSet added = range(gdd.n_points, extra);
  Design out;
  out.n_points = gdd.n_points + extra;
  out.block_sizes = merge(gdd.block_sizes, K);
  out.blocks = gdd.blocks;
  Supplier supply(source, "fill_groups_with_ipbds");
  for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
    const int size = static_cast<int>(groups[i].size());
    const IngredientRequest req = extra <= 1 ? IngredientRequest::pbd(size + extra, K)
                                             : IngredientRequest::ipbd(size + extra, extra, K);
    const Design& filler = supply.get(req);
    if (extra > 1) {
      // Singletons go to the group, the filler hole to the new points.
      std::vector<PointSet> targets;
      for (Point p : groups[i]) targets.push_back({p});
      targets.push_back(added);
      for (auto& nb : place(filler, targets)) out.blocks.push_back(std::move(nb));
      continue;
    }
    // A PBD filler: its points map to the group, then the new point.
    std::vector<Point> image(groups[i]);
    image.insert(image.end(), added.begin(), added.end());
    for (const auto& b : filler.blocks) {
      Block nb;
      for (Point p : b) nb.push_back(image[p]);
      std::sort(nb.begin(), nb.end());
      out.blocks.push_back(std::move(nb));
    }
  }
  PointSet hole = groups.back();
  hole.insert(hole.end(), added.begin(), added.end());
  out.kind = IpbdKind{std::move(hole)};
  return finish(std::move(out), "fill_groups_with_ipbds");
}

Design truncate_weight_td(const Design& td, int keep, const std::vector<int>& last_weights,
                          int alpha, const BlockSizeSet& K, const IngredientSource& source) {
  require_input(td, "truncate_weight_td input");
  const Partition groups = groups_of(td);
  if (groups.size() < 2) throw PreconditionError("truncate_weight_td needs at least two groups");
  const int A = static_cast<int>(groups.front().size());
  for (const auto& g : groups) {
    if (static_cast<int>(g.size()) != A) throw PreconditionError("truncate_weight_td needs a TD");
  }
  if (keep < 0 || keep > A) throw PreconditionError("truncate_weight_td needs 0 <= keep <= A");
  if (static_cast<int>(last_weights.size()) != A) {
    throw PreconditionError("truncate_weight_td needs one weight per last-group point");
  }
  if (alpha < 0) throw PreconditionError("truncate_weight_td needs alpha >= 0");
  const std::size_t t2 = groups.size() - 2;
  std::vector<char> dropped(static_cast<std::size_t>(td.n_points), 0);
  for (int j = keep; j < A; ++j) dropped[groups[t2][j]] = 1;
  std::vector<Point> relabel_to(static_cast<std::size_t>(td.n_points), -1);
  Point next = 0;
  for (Point p = 0; p < td.n_points; ++p) {
    if (!dropped[p]) relabel_to[p] = next++;
  }
  Design master;
  master.n_points = next;
  GddKind kind;
  for (const auto& g : groups) {
    PointSet ng;
    for (Point p : g) {
      if (!dropped[p]) ng.push_back(relabel_to[p]);
    }
    if (!ng.empty()) kind.groups.push_back(std::move(ng));
  }
  std::vector<int> sizes;
  for (const auto& b : td.blocks) {
    Block nb;
    for (Point p : b) {
      if (!dropped[p]) nb.push_back(relabel_to[p]);
    }
    if (nb.size() >= 2) {
      sizes.push_back(static_cast<int>(nb.size()));
      master.blocks.push_back(std::move(nb));
    }
  }
  master.kind = std::move(kind);
  master.block_sizes = sizes.empty() ? td.block_sizes : BlockSizeSet::from(sizes);
  WeightAssignment weights(static_cast<std::size_t>(next), alpha);
  const PointSet& last = groups.back();
  for (int j = 0; j < A; ++j) weights[relabel_to[last[j]]] = last_weights[j];
  Design out = wfc(master, weights, K, source);
  out.provenance = "truncate_weight_td";
  return out;
}

Design inflate(const Design& ipbd, int g, const BlockSizeSet& K, const IngredientSource& source) {
  if (!std::holds_alternative<IpbdKind>(ipbd.kind) && !std::holds_alternative<PbdKind>(ipbd.kind)) {
    throw PreconditionError("inflate needs an IPBD or PBD template");
  }
  if (g < 1) throw PreconditionError("inflate needs g >= 1");
  if (g == 1 && blocks_within(ipbd, K)) {
    Design same = ipbd;
    same.block_sizes = K;
    return finish(std::move(same), "inflate");
  }
  WeightAssignment weights(static_cast<std::size_t>(ipbd.n_points), g);
  try {
    Design out = wfc(ipbd, weights, K, source);
    out.provenance = "inflate";
    return out;
  } catch (const IngredientError& e) {
    throw IngredientError(e.request(), "inflate needs a GDD(" + str(g) +
                                           "^m) for every block size m of the template");
  }
}

Design fill_hgdd(const Design& hgdd, const Design& filler) {
  const auto* hg = std::get_if<HgddKind>(&hgdd.kind);
  if (!hg) throw PreconditionError("fill_hgdd needs an HGDD");
  require_input(hgdd, "fill_hgdd HGDD");
  require_input(filler, "fill_hgdd filler");
  const Partition fgroups = groups_of(filler);
  if (fgroups.size() != static_cast<std::size_t>(hg->m) &&
      fgroups.size() != static_cast<std::size_t>(hg->m) + 1) {
    throw PreconditionError("filler has " + str(static_cast<long long>(fgroups.size())) +
                            " groups, the HGDD has " + str(hg->m) + " holes");
  }
  const int extra_idx = extra_group(fgroups, static_cast<std::size_t>(hg->m),
                                    static_cast<std::size_t>(hg->h), "fill_hgdd filler");
  const int a = extra_idx < 0 ? 0 : static_cast<int>(fgroups[extra_idx].size());
  const PointSet added = range(hgdd.n_points, a);

  Design out;
  out.n_points = hgdd.n_points + a;
  out.block_sizes = merge(hgdd.block_sizes, filler.block_sizes);
  out.blocks = hgdd.blocks;
  for (const auto& row : hg->groups) {
    std::vector<Point> image(static_cast<std::size_t>(filler.n_points));
    std::size_t col = 0;
    for (std::size_t gi = 0; gi < fgroups.size(); ++gi) {
      const PointSet& src = fgroups[gi];
      PointSet dst;
      if (static_cast<int>(gi) == extra_idx) {
        dst = added;
      } else {
        for (Point p : row) {
          const auto& hole = hg->holes[col];
          if (std::find(hole.begin(), hole.end(), p) != hole.end()) dst.push_back(p);
        }
        std::sort(dst.begin(), dst.end());
        ++col;
      }
      for (std::size_t j = 0; j < src.size(); ++j) image[src[j]] = dst[j];
    }
    for (const auto& b : filler.blocks) {
      Block nb;
      for (Point p : b) nb.push_back(image[p]);
      std::sort(nb.begin(), nb.end());
      out.blocks.push_back(std::move(nb));
    }
  }
  GddKind kind{hg->holes};
  if (a > 0) kind.groups.push_back(added);
  out.kind = std::move(kind);
  return finish(std::move(out), "fill_hgdd");
}

Design expand_index(const Design& ipbd, int lambda, const BlockSizeSet& K,
                    const IngredientSource& source) {
  if (!std::holds_alternative<IpbdKind>(ipbd.kind) && !std::holds_alternative<PbdKind>(ipbd.kind)) {
    throw PreconditionError("expand_index needs an IPBD or PBD template");
  }
  if (ipbd.lambda != 1) throw PreconditionError("expand_index needs a lambda = 1 template");
  if (lambda < 1) throw PreconditionError("expand_index needs lambda >= 1");
  require_input(ipbd, "expand_index template");
  Design out = ipbd;
  out.blocks.clear();
  out.resolution.reset();
  out.lambda = lambda;
  out.block_sizes = K;
  Supplier supply(source, "expand_index");
  for (const auto& b : ipbd.blocks) {
    const Design& ing = supply.get(IngredientRequest::pbd(static_cast<int>(b.size()), K, lambda));
    for (const auto& ib : ing.blocks) {
      Block nb;
      for (Point p : ib) nb.push_back(b[p]);
      std::sort(nb.begin(), nb.end());
      out.blocks.push_back(std::move(nb));
    }
  }
  return finish(std::move(out), "expand_index");
}

}  // namespace ipbd
