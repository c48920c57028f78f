#include "ipbd/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ipbd {

BlockSizeSet BlockSizeSet::from(std::vector<int> sizes) {
  if (sizes.empty()) throw std::invalid_argument("block size set is empty");
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.front() < 2) {
    throw std::invalid_argument("block sizes must be at least 2");
  }
  BlockSizeSet k;
  k.sizes_ = std::move(sizes);
  for (int s : k.sizes_) {
    k.alpha_ = std::gcd(k.alpha_, s - 1);
    k.beta_ = std::gcd(k.beta_, s * (s - 1));
  }
  k.gamma_ = k.beta_ / k.alpha_;
  return k;
}

BlockSizeSet BlockSizeSet::parse(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        sizes.push_back(std::stoi(item));
      } else {
        int lo = std::stoi(item.substr(0, dots));
        int hi = std::stoi(item.substr(dots + 2));
        if (hi < lo || hi - lo > 4096) {
          throw std::invalid_argument("bad range '" + item + "'");
        }
        for (int s = lo; s <= hi; ++s) sizes.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse block sizes '" + text + "'");
    }
  }
  return from(std::move(sizes));
}

bool BlockSizeSet::contains(int k) const {
  return std::binary_search(sizes_.begin(), sizes_.end(), k);
}

std::string BlockSizeSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sizes_[i]);
  }
  return out + "}";
}

Partition consecutive_groups(std::span<const int> sizes) {
  Partition groups;
  Point next = 0;
  for (int s : sizes) {
    PointSet g(static_cast<std::size_t>(s));
    std::iota(g.begin(), g.end(), next);
    next += s;
    groups.push_back(std::move(g));
  }
  return groups;
}

PointSet trailing_range(int n_points, int count) {
  PointSet hole(static_cast<std::size_t>(count));
  std::iota(hole.begin(), hole.end(), n_points - count);
  return hole;
}

HgddKind hgdd_layout(int u, int h, int m) {
  HgddKind kind{u, h, m, Partition(u), Partition(m)};
  for (int i = 0; i < u; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int r = 0; r < h; ++r) {
        Point p = i * h * m + j * h + r;
        kind.groups[i].push_back(p);
        kind.holes[j].push_back(p);
      }
    }
  }
  return kind;
}

TdKind td_layout(int k, int n) {
  std::vector<int> sizes(static_cast<std::size_t>(k), n);
  return TdKind{k, n, consecutive_groups(sizes)};
}

std::string kind_tag(const DesignKind& kind) {
  struct Visitor {
    std::string operator()(const PbdKind&) const { return "pbd"; }
    std::string operator()(const IpbdKind&) const { return "ipbd"; }
    std::string operator()(const GddKind&) const { return "gdd"; }
    std::string operator()(const IgddKind&) const { return "igdd"; }
    std::string operator()(const HgddKind&) const { return "hgdd"; }
    std::string operator()(const TdKind&) const { return "td"; }
    std::string operator()(const PackingKind&) const { return "packing"; }
    std::string operator()(const CoveringKind&) const { return "covering"; }
  };
  return std::visit(Visitor{}, kind);
}

std::vector<int> group_sizes(const Design& design) {
  std::vector<int> sizes;
  if (std::holds_alternative<PbdKind>(design.kind)) {
    sizes.assign(static_cast<std::size_t>(design.n_points), 1);
  } else if (const auto* ip = std::get_if<IpbdKind>(&design.kind)) {
    int w = static_cast<int>(ip->hole.size());
    sizes.assign(static_cast<std::size_t>(design.n_points - w), 1);
    sizes.push_back(w);
  } else if (const auto* g = std::get_if<GddKind>(&design.kind)) {
    for (const auto& grp : g->groups) sizes.push_back(static_cast<int>(grp.size()));
  } else if (const auto* td = std::get_if<TdKind>(&design.kind)) {
    for (const auto& grp : td->groups) sizes.push_back(static_cast<int>(grp.size()));
  }
  return sizes;
}

PointSet hole_points(const Design& design) {
  if (const auto* ip = std::get_if<IpbdKind>(&design.kind)) return ip->hole;
  return {};
}

std::map<int, std::size_t> block_size_profile(std::span<const Block> blocks) {
  std::map<int, std::size_t> profile;
  for (const auto& b : blocks) ++profile[static_cast<int>(b.size())];
  return profile;
}

std::map<int, std::size_t> block_size_profile(const Design& design) {
  return block_size_profile(design.blocks);
}

namespace {

void check_partition(const Partition& parts, int n_points, bool must_cover,
                     const char* what) {
  std::vector<char> seen(static_cast<std::size_t>(n_points), 0);
  for (const auto& part : parts) {
    for (Point p : part) {
      if (p < 0 || p >= n_points) {
        throw StructuralError(std::string(what) + " contains out-of-range point " +
                              std::to_string(p));
      }
      if (seen[p]) {
        throw StructuralError(std::string(what) + " overlap at point " +
                              std::to_string(p));
      }
      seen[p] = 1;
    }
  }
  if (must_cover && std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw StructuralError(std::string(what) + " do not cover the point set");
  }
}

void check_subset(const PointSet& sub, const PointSet& super, const char* what) {
  PointSet a = sub, b = super;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) {
    throw StructuralError(std::string(what) + " is not contained in its group");
  }
}

}  // namespace

void check_structure(const Design& design) {
  const int n = design.n_points;
  if (n < 0) throw StructuralError("negative point count");
  if (design.lambda < 0) throw StructuralError("negative lambda");
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    const auto& b = design.blocks[i];
    if (b.size() < 2) {
      throw StructuralError("block " + std::to_string(i) + " has fewer than 2 points");
    }
    for (Point p : b) {
      if (p < 0 || p >= n) {
        throw StructuralError("block " + std::to_string(i) +
                              " contains out-of-range point " + std::to_string(p));
      }
      if (mark[p]) {
        throw StructuralError("block " + std::to_string(i) +
                              " repeats point " + std::to_string(p));
      }
      mark[p] = 1;
    }
    for (Point p : b) mark[p] = 0;
  }
  if (const auto* ip = std::get_if<IpbdKind>(&design.kind)) {
    check_partition(Partition{ip->hole}, n, false, "hole");
    if (ip->hole.empty() || static_cast<int>(ip->hole.size()) >= n) {
      throw StructuralError("IPBD hole size must satisfy 1 <= w < v");
    }
  } else if (const auto* g = std::get_if<GddKind>(&design.kind)) {
    check_partition(g->groups, n, true, "groups");
  } else if (const auto* ig = std::get_if<IgddKind>(&design.kind)) {
    check_partition(ig->groups, n, true, "groups");
    if (ig->holes.size() != ig->groups.size()) {
      throw StructuralError("IGDD needs one hole per group");
    }
    for (std::size_t i = 0; i < ig->groups.size(); ++i) {
      check_subset(ig->holes[i], ig->groups[i], "IGDD hole");
    }
  } else if (const auto* hg = std::get_if<HgddKind>(&design.kind)) {
    check_partition(hg->groups, n, true, "groups");
    check_partition(hg->holes, n, true, "holes");
    if (static_cast<int>(hg->groups.size()) != hg->u ||
        static_cast<int>(hg->holes.size()) != hg->m) {
      throw StructuralError("HGDD group/hole counts do not match u and m");
    }
    for (const auto& grp : hg->groups) {
      for (const auto& hole : hg->holes) {
        int meet = 0;
        for (Point p : grp) {
          meet += static_cast<int>(std::count(hole.begin(), hole.end(), p));
        }
        if (meet != hg->h) {
          throw StructuralError("HGDD group and hole must meet in h points");
        }
      }
    }
  } else if (const auto* td = std::get_if<TdKind>(&design.kind)) {
    check_partition(td->groups, n, true, "groups");
    if (static_cast<int>(td->groups.size()) != td->k) {
      throw StructuralError("TD must have k groups");
    }
    for (const auto& grp : td->groups) {
      if (static_cast<int>(grp.size()) != td->n) {
        throw StructuralError("TD groups must have size n");
      }
    }
  }
  if (design.resolution) {
    for (const auto& cls : design.resolution->classes) {
      for (std::size_t b : cls.blocks) {
        if (b >= design.blocks.size()) {
          throw StructuralError("resolution refers to missing block " + std::to_string(b));
        }
      }
    }
  }
}

namespace {

PointSet map_set(const PointSet& s, std::span<const Point> perm) {
  PointSet out;
  out.reserve(s.size());
  for (Point p : s) out.push_back(perm[p]);
  std::sort(out.begin(), out.end());
  return out;
}

Partition map_partition(const Partition& parts, std::span<const Point> perm) {
  Partition out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(map_set(p, perm));
  return out;
}

DesignKind map_kind(const DesignKind& kind, std::span<const Point> perm) {
  struct Visitor {
    std::span<const Point> perm;
    DesignKind operator()(const PbdKind& k) const { return k; }
    DesignKind operator()(const IpbdKind& k) const {
      return IpbdKind{map_set(k.hole, perm)};
    }
    DesignKind operator()(const GddKind& k) const {
      return GddKind{map_partition(k.groups, perm)};
    }
    DesignKind operator()(const IgddKind& k) const {
      return IgddKind{map_partition(k.groups, perm), map_partition(k.holes, perm)};
    }
    DesignKind operator()(const HgddKind& k) const {
      return HgddKind{k.u, k.h, k.m, map_partition(k.groups, perm),
                      map_partition(k.holes, perm)};
    }
    DesignKind operator()(const TdKind& k) const {
      return TdKind{k.k, k.n, map_partition(k.groups, perm)};
    }
    DesignKind operator()(const PackingKind& k) const { return k; }
    DesignKind operator()(const CoveringKind& k) const { return k; }
  };
  return std::visit(Visitor{perm}, kind);
}

// Orders the points of each part and concatenates the parts.
std::vector<Point> concat_sorted(const Partition& parts) {
  std::vector<Point> order;
  for (auto part : parts) {
    std::sort(part.begin(), part.end());
    order.insert(order.end(), part.begin(), part.end());
  }
  return order;
}

// Index of the unique group whose size differs from all others, if any.
std::optional<std::size_t> distinguished_group(const Partition& groups) {
  if (groups.size() < 3) return std::nullopt;
  std::map<std::size_t, std::size_t> freq;
  for (const auto& g : groups) ++freq[g.size()];
  if (freq.size() != 2) return std::nullopt;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (freq[groups[i].size()] == 1) return i;
  }
  return std::nullopt;
}

std::vector<Point> normalized_order(const Design& d) {
  const int n = d.n_points;
  std::vector<Point> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  if (const auto* ip = std::get_if<IpbdKind>(&d.kind)) {
    std::vector<char> in_hole(static_cast<std::size_t>(n), 0);
    for (Point p : ip->hole) in_hole[p] = 1;
    std::vector<Point> order;
    for (Point p = 0; p < n; ++p) if (!in_hole[p]) order.push_back(p);
    for (Point p = 0; p < n; ++p) if (in_hole[p]) order.push_back(p);
    return order;
  }
  auto grouped = [](Partition groups) {
    if (auto last = distinguished_group(groups); last && *last + 1 != groups.size()) {
      auto g = groups[*last];
      groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(*last));
      groups.push_back(std::move(g));
    }
    return concat_sorted(groups);
  };
  if (const auto* g = std::get_if<GddKind>(&d.kind)) return grouped(g->groups);
  if (const auto* td = std::get_if<TdKind>(&d.kind)) return concat_sorted(td->groups);
  if (const auto* ig = std::get_if<IgddKind>(&d.kind)) {
    std::vector<Point> order;
    for (std::size_t i = 0; i < ig->groups.size(); ++i) {
      PointSet hole = ig->holes[i];
      std::sort(hole.begin(), hole.end());
      PointSet grp = ig->groups[i];
      std::sort(grp.begin(), grp.end());
      for (Point p : grp) {
        if (!std::binary_search(hole.begin(), hole.end(), p)) order.push_back(p);
      }
      order.insert(order.end(), hole.begin(), hole.end());
    }
    return order;
  }
  if (const auto* hg = std::get_if<HgddKind>(&d.kind)) {
    std::vector<int> row(static_cast<std::size_t>(n)), col(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < hg->groups.size(); ++i) {
      for (Point p : hg->groups[i]) row[p] = static_cast<int>(i);
    }
    for (std::size_t j = 0; j < hg->holes.size(); ++j) {
      for (Point p : hg->holes[j]) col[p] = static_cast<int>(j);
    }
    std::vector<Point> order = identity;
    std::stable_sort(order.begin(), order.end(), [&](Point a, Point b) {
      return std::pair(row[a], col[a]) < std::pair(row[b], col[b]);
    });
    return order;
  }
  return identity;
}

}  // namespace

Design relabel(const Design& design, std::span<const Point> perm) {
  if (static_cast<int>(perm.size()) != design.n_points) {
    throw PreconditionError("relabel: permutation size mismatch");
  }
  Design out = design;
  for (auto& b : out.blocks) {
    for (auto& p : b) p = perm[p];
    std::sort(b.begin(), b.end());
  }
  out.kind = map_kind(design.kind, perm);
  return out;
}

Design normalize(const Design& design) {
  check_structure(design);
  std::vector<Point> order = normalized_order(design);
  std::vector<Point> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = static_cast<Point>(i);
  Design out = relabel(design, perm);

  // Parts follow the new layout order.
  auto by_first = [](const PointSet& a, const PointSet& b) {
    return !a.empty() && !b.empty() ? a.front() < b.front() : a.size() > b.size();
  };
  if (auto* g = std::get_if<GddKind>(&out.kind)) {
    std::sort(g->groups.begin(), g->groups.end(), by_first);
  } else if (auto* td = std::get_if<TdKind>(&out.kind)) {
    std::sort(td->groups.begin(), td->groups.end(), by_first);
  } else if (auto* hg = std::get_if<HgddKind>(&out.kind)) {
    std::sort(hg->groups.begin(), hg->groups.end(), by_first);
    std::sort(hg->holes.begin(), hg->holes.end(), by_first);
  } else if (auto* ig = std::get_if<IgddKind>(&out.kind)) {
    std::vector<std::size_t> gi(ig->groups.size());
    std::iota(gi.begin(), gi.end(), 0);
    std::sort(gi.begin(), gi.end(), [&](std::size_t a, std::size_t b) {
      return by_first(ig->groups[a], ig->groups[b]);
    });
    IgddKind sorted_kind;
    for (std::size_t i : gi) {
      sorted_kind.groups.push_back(ig->groups[i]);
      sorted_kind.holes.push_back(ig->holes[i]);
    }
    *ig = std::move(sorted_kind);
  }

  // Sort blocks lexicographically and carry the resolution along.
  std::vector<std::size_t> idx(out.blocks.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return out.blocks[a] < out.blocks[b];
  });
  std::vector<Block> sorted;
  sorted.reserve(idx.size());
  std::vector<std::size_t> new_index(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    sorted.push_back(std::move(out.blocks[idx[i]]));
    new_index[idx[i]] = i;
  }
  out.blocks = std::move(sorted);
  if (out.resolution) {
    for (auto& cls : out.resolution->classes) {
      for (auto& b : cls.blocks) b = new_index[b];
      std::sort(cls.blocks.begin(), cls.blocks.end());
    }
  }
  return out;
}

}  // namespace ipbd
