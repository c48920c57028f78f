#include "ipbd/design_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ipbd::io {

namespace {

bool is_consecutive(const Partition& parts) {
  Point next = 0;
  for (const auto& part : parts) {
    for (Point p : part) {
      if (p != next++) return false;
    }
  }
  return true;
}

std::vector<int> part_sizes(const Partition& parts) {
  std::vector<int> sizes;
  for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
  return sizes;
}

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw StructuralError(std::string("missing field '") + name + "'");
  }
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw StructuralError(std::string("bad field '") + name + "': " + e.what());
  }
}

}  // namespace

json to_json(const Design& design) {
  json doc;
  doc["kind"] = kind_tag(design.kind);
  doc["v"] = design.n_points;
  doc["lambda"] = design.lambda;
  doc["K"] = std::vector<int>(design.block_sizes.sizes().begin(),
                              design.block_sizes.sizes().end());
  if (const auto* ip = std::get_if<IpbdKind>(&design.kind)) {
    if (ip->hole != trailing_range(design.n_points, static_cast<int>(ip->hole.size()))) {
      throw StructuralError("IPBD hole is not trailing; normalize first");
    }
    doc["w"] = ip->hole.size();
  } else if (const auto* g = std::get_if<GddKind>(&design.kind)) {
    if (!is_consecutive(g->groups)) {
      throw StructuralError("GDD groups are not consecutive; normalize first");
    }
    doc["groups"] = part_sizes(g->groups);
  } else if (const auto* ig = std::get_if<IgddKind>(&design.kind)) {
    if (!is_consecutive(ig->groups)) {
      throw StructuralError("IGDD groups are not consecutive; normalize first");
    }
    std::vector<int> holes;
    for (std::size_t i = 0; i < ig->groups.size(); ++i) {
      const auto& grp = ig->groups[i];
      PointSet hole = ig->holes[i];
      std::sort(hole.begin(), hole.end());
      PointSet tail(grp.end() - static_cast<std::ptrdiff_t>(hole.size()), grp.end());
      if (hole != tail) {
        throw StructuralError("IGDD hole is not trailing in its group; normalize first");
      }
      holes.push_back(static_cast<int>(hole.size()));
    }
    doc["groups"] = part_sizes(ig->groups);
    doc["holes"] = holes;
  } else if (const auto* hg = std::get_if<HgddKind>(&design.kind)) {
    HgddKind layout = hgdd_layout(hg->u, hg->h, hg->m);
    if (layout.groups != hg->groups || layout.holes != hg->holes) {
      throw StructuralError("HGDD is not in grid layout; normalize first");
    }
    doc["u"] = hg->u;
    doc["h"] = hg->h;
    doc["m"] = hg->m;
  } else if (const auto* td = std::get_if<TdKind>(&design.kind)) {
    if (!is_consecutive(td->groups)) {
      throw StructuralError("TD groups are not consecutive; normalize first");
    }
    doc["k"] = td->k;
    doc["n"] = td->n;
  }
  doc["blocks"] = design.blocks;
  if (design.resolution) {
    json classes = json::array();
    json kinds = json::array();
    for (const auto& cls : design.resolution->classes) {
      classes.push_back(cls.blocks);
      kinds.push_back(cls.kind == ClassKind::full ? "full" : "partial");
    }
    doc["resolution"] = classes;
    doc["class_kinds"] = kinds;
  }
  if (!design.provenance.empty()) doc["provenance"] = design.provenance;
  return doc;
}

Design design_from_json(const json& doc) {
  if (!doc.is_object()) throw StructuralError("design document must be an object");
  Design d;
  const auto tag = field<std::string>(doc, "kind");
  d.n_points = field<int>(doc, "v");
  if (d.n_points < 0) throw StructuralError("v must be nonnegative");
  d.lambda = doc.contains("lambda") ? field<int>(doc, "lambda") : 1;
  try {
    d.block_sizes = BlockSizeSet::from(field<std::vector<int>>(doc, "K"));
  } catch (const std::invalid_argument& e) {
    throw StructuralError(std::string("bad K: ") + e.what());
  }
  d.blocks = field<std::vector<Block>>(doc, "blocks");
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());

  if (tag == "pbd") {
    d.kind = PbdKind{};
  } else if (tag == "ipbd") {
    int w = field<int>(doc, "w");
    if (w < 1 || w >= d.n_points) throw StructuralError("IPBD needs 1 <= w < v");
    d.kind = IpbdKind{trailing_range(d.n_points, w)};
  } else if (tag == "gdd" || tag == "igdd") {
    auto sizes = field<std::vector<int>>(doc, "groups");
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 0; }) ||
        std::accumulate(sizes.begin(), sizes.end(), 0) != d.n_points) {
      throw StructuralError("group sizes must be nonnegative and sum to v");
    }
    Partition groups = consecutive_groups(sizes);
    if (tag == "gdd") {
      d.kind = GddKind{std::move(groups)};
    } else {
      auto holes = field<std::vector<int>>(doc, "holes");
      if (holes.size() != sizes.size()) throw StructuralError("need one hole per group");
      Partition hole_sets;
      for (std::size_t i = 0; i < holes.size(); ++i) {
        if (holes[i] < 0 || holes[i] > sizes[i]) {
          throw StructuralError("hole larger than its group");
        }
        hole_sets.emplace_back(groups[i].end() - holes[i], groups[i].end());
      }
      d.kind = IgddKind{std::move(groups), std::move(hole_sets)};
    }
  } else if (tag == "hgdd") {
    int u = field<int>(doc, "u"), h = field<int>(doc, "h"), m = field<int>(doc, "m");
    if (u < 1 || h < 1 || m < 1 || u * h * m != d.n_points) {
      throw StructuralError("HGDD needs u*h*m == v");
    }
    d.kind = hgdd_layout(u, h, m);
  } else if (tag == "td") {
    int k = field<int>(doc, "k"), n = field<int>(doc, "n");
    if (k < 1 || n < 1 || k * n != d.n_points) throw StructuralError("TD needs k*n == v");
    d.kind = td_layout(k, n);
  } else if (tag == "packing") {
    d.kind = PackingKind{};
  } else if (tag == "covering") {
    d.kind = CoveringKind{};
  } else {
    throw StructuralError("unknown design kind '" + tag + "'");
  }

  if (doc.contains("resolution")) {
    auto classes = field<std::vector<std::vector<std::size_t>>>(doc, "resolution");
    std::vector<std::string> kinds;
    if (doc.contains("class_kinds")) kinds = field<std::vector<std::string>>(doc, "class_kinds");
    if (!kinds.empty() && kinds.size() != classes.size()) {
      throw StructuralError("class_kinds must match resolution length");
    }
    Resolution r;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      ParallelClass cls;
      cls.blocks = std::move(classes[i]);
      if (!kinds.empty()) {
        if (kinds[i] == "full") cls.kind = ClassKind::full;
        else if (kinds[i] == "partial") cls.kind = ClassKind::partial;
        else throw StructuralError("class kind must be 'full' or 'partial'");
      }
      r.classes.push_back(std::move(cls));
    }
    d.resolution = std::move(r);
  }
  if (doc.contains("provenance")) d.provenance = field<std::string>(doc, "provenance");
  check_structure(d);
  return d;
}

json to_json(const LatinSquareSet& set) {
  json doc;
  doc["n"] = set.n;
  doc["m"] = set.m;
  doc["hole"] = set.hole;
  json squares = json::array();
  for (const auto& sq : set.squares) {
    json cells = json::array();
    for (int c : sq) {
      if (c == kEmptyCell) cells.push_back(nullptr);
      else cells.push_back(c);
    }
    squares.push_back(std::move(cells));
  }
  doc["squares"] = std::move(squares);
  return doc;
}

LatinSquareSet latin_from_json(const json& doc) {
  if (!doc.is_object()) throw StructuralError("latin document must be an object");
  LatinSquareSet set;
  set.n = field<int>(doc, "n");
  set.m = doc.contains("m") ? field<int>(doc, "m") : 0;
  if (set.n < 1 || set.m < 0 || set.m > set.n) throw StructuralError("need 0 <= m <= n, n >= 1");
  if (doc.contains("hole")) {
    set.hole = field<PointSet>(doc, "hole");
    if (static_cast<int>(set.hole.size()) != set.m) {
      throw StructuralError("hole must list exactly m symbols");
    }
    for (Point p : set.hole) {
      if (p < 0 || p >= set.n) throw StructuralError("hole symbol out of range");
    }
    std::sort(set.hole.begin(), set.hole.end());
    if (std::adjacent_find(set.hole.begin(), set.hole.end()) != set.hole.end()) {
      throw StructuralError("hole repeats a symbol");
    }
  } else {
    set.hole = trailing_range(set.n, set.m);
  }
  if (!doc.contains("squares") || !doc["squares"].is_array()) {
    throw StructuralError("missing field 'squares'");
  }
  const std::size_t cells = static_cast<std::size_t>(set.n) * set.n;
  for (const auto& sq : doc["squares"]) {
    std::vector<const json*> flat;
    if (!sq.is_array()) throw StructuralError("square must be a list");
    if (!sq.empty() && sq.front().is_array()) {
      for (const auto& row : sq) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(set.n)) {
          throw StructuralError("square rows must have n cells");
        }
        for (const auto& c : row) flat.push_back(&c);
      }
    } else {
      for (const auto& c : sq) flat.push_back(&c);
    }
    if (flat.size() != cells) throw StructuralError("square must have n*n cells");
    std::vector<int> out;
    out.reserve(cells);
    for (const json* c : flat) {
      if (c->is_null()) {
        out.push_back(kEmptyCell);
      } else if (c->is_number_integer()) {
        int s = c->get<int>();
        if (s < 0 || s >= set.n) throw StructuralError("symbol out of range");
        out.push_back(s);
      } else {
        throw StructuralError("cell must be an integer or null");
      }
    }
    set.squares.push_back(std::move(out));
  }
  return set;
}

Document parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("squares")) return latin_from_json(doc);
  return design_from_json(doc);
}

Document read_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(1) << '\n';
}

}  // namespace ipbd::io
