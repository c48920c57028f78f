// ipbd: command-line front end.
//
// Exit codes: 0 success or valid, 1 negative result (invalid design,
// nonexistent, construction failure), 2 usage or input error, 3 budget
// exhausted.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipbd/arithmetic.hpp"
#include "ipbd/catalog.hpp"
#include "ipbd/derived.hpp"
#include "ipbd/design_io.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/resolve.hpp"
#include "ipbd/search.hpp"
#include "ipbd/verify.hpp"

namespace {

using namespace ipbd;
using io::json;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  bool as_json = false;
  int workers = 1;
  unsigned long long seed = 0;
  long long node_budget = kDefaultNodeBudget;
  double time_budget = kDefaultTimeBudget;
  bool trace = false;
  std::string output;
};

// Shape parameters shared by admissible, search and construct.
struct Shape {
  std::string kind;
  int v = 0;
  int w = 0;
  int g = 0;
  int n = 0;
  int h = 0;
  int u = 0;
  int m = 0;
  int k = 0;
  int lambda = 1;
  std::string groups;
  std::string K;
  bool resolvable = false;
};

// Usage errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BlockSizeSet need_K(const Shape& s) {
  if (s.K.empty()) throw UsageError("--K is required for " + s.kind);
  return BlockSizeSet::parse(s.K);
}

// "2,2,4", "2^3,4" or "2^3 4^1".
std::vector<int> parse_groups(const std::string& text) {
  std::vector<int> out;
  std::string t = text;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    const auto caret = tok.find('^');
    const int size = std::stoi(tok.substr(0, caret));
    const int count = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    if (size < 0 || count < 0) throw UsageError("bad group token " + tok);
    out.insert(out.end(), static_cast<std::size_t>(count), size);
  }
  return out;
}

std::vector<int> gnh1(int g, int n, int h) {
  std::vector<int> gs(static_cast<std::size_t>(std::max(n, 0)), g);
  if (h > 0) gs.push_back(h);
  return gs;
}

IngredientRequest request_for(const Shape& s) {
  const BlockSizeSet K = need_K(s);
  if (s.kind == "pbd") return IngredientRequest::pbd(s.v, K, s.lambda);
  if (s.kind == "ipbd") return IngredientRequest::ipbd(s.v, s.w, K, s.lambda);
  if (s.kind == "gdd") {
    return IngredientRequest::gdd(s.groups.empty() ? gnh1(s.g, s.n, s.h) : parse_groups(s.groups), K);
  }
  if (s.kind == "igdd") return IngredientRequest::igdd(s.g, s.h, s.u, K);
  if (s.kind == "hgdd") return IngredientRequest::hgdd(s.u, s.h, s.m, K);
  throw UsageError("unknown kind " + s.kind);
}

void add_shape_options(CLI::App* app, Shape& s, bool with_kind) {
  // -h would collide with --h.
  app->set_help_flag("--help", "print this help message and exit");
  if (with_kind) {
    app->add_option("kind", s.kind, "pbd, ipbd, gdd, igdd, hgdd")
        ->required()
        ->check(CLI::IsMember({"pbd", "ipbd", "gdd", "igdd", "hgdd", "rgdd"}));
  }
  app->add_option("--v", s.v, "number of points");
  app->add_option("--w", s.w, "hole size");
  app->add_option("--g", s.g, "group size");
  app->add_option("--n", s.n, "number of groups of size g");
  app->add_option("--h", s.h, "distinguished group, IGDD hole or HGDD cell size");
  app->add_option("--u", s.u, "number of groups");
  app->add_option("--m", s.m, "number of HGDD holes");
  app->add_option("--k", s.k, "block size (rgdd)");
  app->add_option("--lambda", s.lambda, "index")->check(CLI::NonNegativeNumber);
  app->add_option("--groups", s.groups, "group type, e.g. 2^3,4^1");
  app->add_option("--K", s.K, "block sizes, e.g. 3,4 or 3..7");
}

void emit(const Globals& G, const json& doc) {
  if (!G.output.empty()) {
    io::write_json(G.output, doc);
  } else {
    std::cout << doc.dump() << "\n";
  }
}

json design_json(const Design& d) { return io::to_json(normalize(d)); }

// Accepts a bare design or latin document, or an object wrapping one under
// "design" (as emitted by --json and app).
io::Document read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("design") && doc["design"].is_object()) {
    return io::parse_document(doc["design"].dump());
  }
  return io::parse_document(text);
}

json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [x, y] : edges) a.push_back({x, y});
  return a;
}

json packing_json(const PackingStats& s) {
  return {{"b", s.blocks},
          {"johnson", s.johnson},
          {"e", s.deficiency},
          {"leave", edges_json(s.leave)},
          {"leave_degrees", s.leave_degrees}};
}

json covering_json(const CoveringStats& s) {
  return {{"b", s.blocks},
          {"schonheim", s.schonheim},
          {"excess", edges_json(s.excess)},
          {"excess_degrees", s.excess_degrees}};
}

json report_json(const Report& r) {
  return {{"valid", r.valid}, {"violations", r.violation_count}, {"details", r.details}};
}

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

// ---- admissible ----

int run_admissible(const Globals& G, const Shape& s) {
  Admissibility a;
  std::string subject;
  if (s.kind == "rgdd") {
    a = admissible_rgdd(s.g, s.u, s.k);
    subject = "RGDD(" + std::to_string(s.g) + "^" + std::to_string(s.u) + ",{" + std::to_string(s.k) + "})";
  } else {
    const IngredientRequest req = request_for(s);
    a = s.kind == "ipbd" && s.lambda != 1 ? admissible_ipbd_lambda(s.v, s.w, req.K, s.lambda)
        : s.kind == "gdd" && s.groups.empty() && s.h > 0 && s.h != s.g
            ? admissible_gdd_gnh1(s.g, s.n, s.h, req.K)
            : admissible(req);
    subject = req.describe();
  }
  if (G.as_json) {
    emit(G, {{"subject", subject}, {"holds", a.holds}, {"condition", a.condition}, {"reason", a.reason}});
  } else {
    std::cout << subject << ": " << (a.holds ? "admissible" : "not admissible (" + a.condition + ")")
              << ", " << a.reason << "\n";
  }
  return a.holds ? kOk : kNegative;
}

// ---- gen ----

struct GenArgs {
  std::string name;
  int q = 0;
  int v = 0;
  int k = 0;
  int t = 0;
  int n = 0;
};

int run_gen(const Globals& G, const GenArgs& a) {
  const auto need = [](int x, const char* flag) {
    if (x <= 0) throw UsageError(std::string("gen needs ") + flag);
    return x;
  };
  std::optional<Design> d;
  std::optional<LatinSquareSet> L;
  if (a.name == "fano") {
    d = projective_plane(2);
  } else if (a.name == "pg") {
    d = projective_plane(need(a.q, "--q"));
  } else if (a.name == "ag") {
    d = affine_plane(need(a.q, "--q"));
  } else if (a.name == "sts") {
    d = steiner_triple(need(a.v, "--v"));
  } else if (a.name == "td") {
    d = transversal_design(need(a.k, "--k"), need(a.q, "--q"));
  } else if (a.name == "rtd") {
    d = resolvable_transversal_design(need(a.k, "--k"), need(a.q, "--q"));
  } else if (a.name == "one-factorization") {
    d = one_factorization(need(a.n, "--n"));
  } else if (a.name == "mols") {
    L = mols(need(a.q, "--q"), a.t > 0 ? a.t : a.q - 1);
  } else if (a.name == "idempotent-mols") {
    L = idempotent_mols(need(a.q, "--q"), a.t > 0 ? a.t : a.q - 2);
  } else {
    throw UsageError("unknown generator " + a.name);
  }
  if (L) {
    emit(G, io::to_json(*L));
    if (!G.output.empty()) std::cerr << L->count() << " squares of order " << L->n << "\n";
  } else {
    emit(G, design_json(*d));
    if (!G.output.empty()) std::cerr << d->provenance << ": " << d->blocks.size() << " blocks\n";
  }
  return kOk;
}

// ---- search ----

struct SearchArgs {
  bool count = false;
  std::string symmetry = "all";
};

int run_search(const Globals& G, const Shape& s, const SearchArgs& sa) {
  if (s.kind.empty()) throw UsageError("search needs a kind");
  const BlockSizeSet K = need_K(s);
  SearchProblem p;
  if (s.kind == "pbd") {
    p = ipbd_problem(s.v, 0, K);
  } else if (s.kind == "ipbd") {
    p = ipbd_problem(s.v, s.w, K);
  } else if (s.kind == "gdd") {
    const auto gs = s.groups.empty() ? gnh1(s.g, s.n, s.h) : parse_groups(s.groups);
    p = gdd_problem(gs, K);
  } else if (s.kind == "igdd") {
    p = igdd_problem(s.g, s.h, s.u, K);
  } else if (s.kind == "hgdd") {
    p = hgdd_problem(s.u, s.h, s.m, K);
  } else {
    throw UsageError("search does not support " + s.kind);
  }
  p.require_resolution = s.resolvable;
  p.node_budget = G.node_budget;
  p.time_budget = G.time_budget;
  p.workers = G.workers;
  p.enumerate_all = sa.count;
  p.symmetry = sa.symmetry == "none"    ? SymmetryMode::none
               : sa.symmetry == "first" ? SymmetryMode::first_level
                                        : SymmetryMode::all_levels;
  const SearchResult r = search(p);
  const std::string status = to_string(r.status);
  if (G.as_json) {
    json out{{"status", status}, {"nodes", r.nodes}, {"seconds", r.seconds}, {"seed", G.seed}};
    if (sa.count) out["solutions"] = r.solutions;
    if (!r.message.empty()) out["message"] = r.message;
    if (r.design) out["design"] = design_json(*r.design);
    emit(G, out);
  } else {
    std::cerr << status << " after " << r.nodes << " nodes, " << r.seconds << " s";
    if (sa.count) std::cerr << ", " << r.solutions << " solutions";
    std::cerr << "\n";
    // stdout carries either the design document or the bare status.
    if (r.design && !sa.count) {
      emit(G, design_json(*r.design));
    } else {
      std::cout << status << "\n";
    }
  }
  switch (r.status) {
    case SearchStatus::found:
      return kOk;
    case SearchStatus::nonexistent:
      return sa.count && r.solutions > 0 ? kOk : kNegative;
    case SearchStatus::budget_exhausted:
      return kBudget;
  }
  return kNegative;
}

// ---- construct ----

Resolver make_resolver(const Globals& G) {
  ResolveOptions o;
  o.workers = G.workers;
  o.node_budget = std::min(o.node_budget, G.node_budget);
  o.time_budget = std::min(o.time_budget, G.time_budget);
  return Resolver(o);
}

int finish_construction(const Globals& G, const ConstructionResult& r, const std::string& subject) {
  if (G.as_json) {
    json out{{"subject", subject}, {"ok", r.design.has_value()}};
    if (r.design) out["design"] = design_json(*r.design);
    if (G.trace) out["trace"] = r.trace.to_json();
    emit(G, out);
  } else {
    if (G.trace) std::cerr << r.trace.render();
    if (r.design) {
      std::cerr << subject << ": " << r.design->provenance << "\n";
      emit(G, design_json(*r.design));
    } else {
      std::cerr << subject << ": construction failed\n";
    }
  }
  return r.design ? kOk : kNegative;
}

int run_construct(const Globals& G, const Shape& s) {
  const BlockSizeSet K = need_K(s);
  Resolver R = make_resolver(G);
  if (s.kind == "ipbd") {
    return finish_construction(G, construct_ipbd(s.v, s.w, K, R),
                               IngredientRequest::ipbd(s.v, s.w, K).describe());
  }
  if (s.kind == "gdd") {
    return finish_construction(G, construct_gdd(s.g, s.n, s.h, K, R),
                               IngredientRequest::gdd(gnh1(s.g, s.n, s.h), K).describe());
  }
  throw UsageError("construct supports ipbd and gdd");
}

// ---- verify ----

int run_verify(const Globals& G, const std::string& path) {
  const io::Document doc = read_input(path);
  json out;
  bool valid = true;
  std::string text;
  if (const auto* d = std::get_if<Design>(&doc)) {
    const Report r = verify_design(*d, G.workers);
    valid = r.valid;
    out = {{"kind", kind_tag(d->kind)}, {"points", d->n_points}, {"blocks", d->blocks.size()},
           {"report", report_json(r)}};
    text = kind_tag(d->kind) + " on " + std::to_string(d->n_points) + " points, " +
           std::to_string(d->blocks.size()) + " blocks: " + r.summary();
    if (valid && std::holds_alternative<PackingKind>(d->kind) && d->block_sizes.sizes().size() == 1) {
      const auto st = packing_stats(*d);
      out["stats"] = packing_json(st);
      text += "\n  b=" + std::to_string(st.blocks) + " johnson=" + std::to_string(st.johnson) +
              " e=" + std::to_string(st.deficiency);
    }
    if (valid && std::holds_alternative<CoveringKind>(d->kind) && d->block_sizes.sizes().size() == 1) {
      const auto st = covering_stats(*d);
      out["stats"] = covering_json(st);
      text += "\n  b=" + std::to_string(st.blocks) + " schonheim=" + std::to_string(st.schonheim);
    }
  } else {
    const auto& L = std::get<LatinSquareSet>(doc);
    const Report lr = verify_latin(L);
    out = {{"kind", "latin"}, {"n", L.n}, {"m", L.m}, {"squares", L.count()}, {"latin", report_json(lr)}};
    valid = lr.valid;
    text = std::to_string(L.count()) + " square(s) of side " + std::to_string(L.n) + ", hole " +
           std::to_string(L.m) + ": latin " + lr.summary();
    if (L.count() > 1) {
      const Report orth = verify_orthogonal(L);
      out["orthogonal"] = report_json(orth);
      valid = valid && orth.valid;
      text += "; orthogonal " + orth.summary();
    }
  }
  out["valid"] = valid;
  if (G.as_json) {
    emit(G, out);
  } else {
    std::cout << (valid ? "VALID" : "INVALID") << ": " << text << "\n";
  }
  return valid ? kOk : kNegative;
}

// ---- app ----

struct AppArgs {
  int n = 0;
  int m = 0;
  int t = 2;
  int v = 0;
  int k = 3;
  std::string K;
};

int run_app_imols(const Globals& G, const AppArgs& a) {
  if (a.K.empty()) throw UsageError("app imols needs --K");
  const BlockSizeSet K = BlockSizeSet::parse(a.K);
  Resolver R = make_resolver(G);
  const auto r = construct_ipbd(a.n, a.m, K, R);
  if (G.trace) std::cerr << r.trace.render();
  if (!r.design) {
    std::cerr << "no IPBD((" << a.n << ";" << a.m << ")," << K.to_string() << ") template\n";
    return kNegative;
  }
  const LatinSquareSet L = imols_from_ipbd(*r.design, a.t);
  json out{{"design", io::to_json(L)},
           {"template", r.design->provenance},
           {"stats", {{"n", L.n}, {"m", L.m}, {"t", L.count()}, {"orthogonal", bool(verify_orthogonal(L))}}}};
  if (G.as_json && G.trace) out["trace"] = r.trace.to_json();
  emit(G, out);
  return kOk;
}

int run_app_packing(const Globals& G, const AppArgs& a) {
  Resolver R = make_resolver(G);
  const PackingOutcome p = best_packing(a.v, a.k, R);
  if (!G.as_json) {
    std::cerr << p.recipe << ": b=" << p.stats.blocks << " johnson=" << p.stats.johnson
              << " e=" << p.stats.deficiency << " leave degrees [" << join(p.stats.leave_degrees) << "]\n";
  }
  emit(G, {{"design", design_json(p.design)}, {"recipe", p.recipe}, {"stats", packing_json(p.stats)}});
  return kOk;
}

int run_app_covering(const Globals& G, const AppArgs& a) {
  Resolver R = make_resolver(G);
  const CoveringOutcome c = best_covering(a.v, a.k, R);
  if (!G.as_json) {
    std::cerr << c.recipe << ": b=" << c.stats.blocks << " schonheim=" << c.stats.schonheim
              << " excess degrees [" << join(c.stats.excess_degrees) << "]\n";
  }
  emit(G, {{"design", design_json(c.design)}, {"recipe", c.recipe}, {"stats", covering_json(c.stats)}});
  return kOk;
}

// ---- catalog ----

int run_catalog_list(const Globals& G) {
  const auto keys = catalog::keys();
  if (G.as_json) {
    emit(G, keys);
  } else {
    for (const auto& k : keys) std::cout << k << "\n";
  }
  return kOk;
}

int run_catalog_show(const Globals& G, const std::string& key) {
  const io::Document doc = catalog::tabulated(key);
  if (const auto* d = std::get_if<Design>(&doc)) {
    emit(G, design_json(*d));
  } else {
    emit(G, io::to_json(std::get<LatinSquareSet>(doc)));
  }
  return kOk;
}

int run_catalog_persist(const std::string& key, const std::string& file, std::string dir) {
  if (dir.empty()) {
    if (const char* env = std::getenv("IPBD_CATALOG_DIR"); env && *env) {
      dir = std::string(env).substr(0, std::string(env).find(':'));
    }
  }
  if (dir.empty()) throw UsageError("catalog persist needs --dir or IPBD_CATALOG_DIR");
  const io::Document doc = read_input(file);
  json j;
  if (const auto* d = std::get_if<Design>(&doc)) {
    if (const Report r = verify_design(*d); !r) {
      std::cerr << "refusing to persist an invalid design: " << r.summary() << "\n";
      return kNegative;
    }
    j = design_json(*d);
  } else {
    const auto& L = std::get<LatinSquareSet>(doc);
    if (const Report r = verify_latin(L); !r) {
      std::cerr << "refusing to persist an invalid latin square set: " << r.summary() << "\n";
      return kNegative;
    }
    j = io::to_json(L);
  }
  catalog::persist(dir, key, j);
  std::cerr << "stored " << key << " in " << dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construction and verification of incomplete pairwise balanced designs"};
  app.require_subcommand(1);
  // Global flags may follow the subcommand.
  app.fallthrough();
  Globals G;
  app.add_flag("--json", G.as_json, "machine-readable output");
  app.add_option("--workers", G.workers, "parallel workers (1 = deterministic serial)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", G.seed, "seed for randomized modes (searches are deterministic)");
  app.add_option("--node-budget", G.node_budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--time-budget", G.time_budget, "search time budget in seconds")
      ->check(CLI::PositiveNumber);
  app.add_flag("--trace", G.trace, "print the construction tree");
  app.add_option("-o,--output", G.output, "write the result document to a file");

  Shape adm_shape;
  auto* adm = app.add_subcommand("admissible", "check the necessary conditions");
  add_shape_options(adm, adm_shape, true);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "run a direct generator");
  gen->add_option("name", gen_args.name,
                  "fano, pg, ag, sts, td, rtd, one-factorization, mols, idempotent-mols")
      ->required();
  gen->add_option("--q", gen_args.q, "order");
  gen->add_option("--v", gen_args.v, "points");
  gen->add_option("--k", gen_args.k, "groups / block size");
  gen->add_option("--t", gen_args.t, "number of squares");
  gen->add_option("--n", gen_args.n, "points (one-factorization)");

  Shape search_shape;
  SearchArgs search_args;
  auto* srch = app.add_subcommand("search", "exhaustive search");
  add_shape_options(srch, search_shape, false);
  srch->add_option("kind,--kind", search_shape.kind, "pbd, ipbd, gdd, igdd, hgdd");
  srch->add_flag("--resolvable", search_shape.resolvable, "require a resolution");
  srch->add_flag("--count", search_args.count, "count all solutions");
  srch->add_option("--symmetry", search_args.symmetry, "none, first, all")
      ->check(CLI::IsMember({"none", "first", "all"}));

  Shape cons_shape;
  auto* cons = app.add_subcommand("construct", "recursive construction");
  add_shape_options(cons, cons_shape, false);
  cons->add_option("kind", cons_shape.kind, "ipbd or gdd")
      ->required()
      ->check(CLI::IsMember({"ipbd", "gdd"}));

  std::string verify_path;
  auto* ver = app.add_subcommand("verify", "certify a design or latin square file");
  ver->add_option("file", verify_path, "path, or - for stdin")->required();

  AppArgs app_args;
  auto* apps = app.add_subcommand("app", "application pipelines");
  apps->require_subcommand(1);
  apps->fallthrough();
  auto* imols = apps->add_subcommand("imols", "IMOLS from an IPBD template");
  imols->add_option("--n", app_args.n, "side")->required();
  imols->add_option("--m", app_args.m, "hole size")->required();
  imols->add_option("--t", app_args.t, "number of squares")->check(CLI::PositiveNumber);
  imols->add_option("--K", app_args.K, "template block sizes")->required();
  auto* pack = apps->add_subcommand("packing", "(v,k,1)-packing from a template");
  pack->add_option("--v", app_args.v, "points")->required();
  pack->add_option("--k", app_args.k, "block size");
  auto* cov = apps->add_subcommand("covering", "(v,k,1)-covering from a template");
  cov->add_option("--v", app_args.v, "points")->required();
  cov->add_option("--k", app_args.k, "block size");

  std::string cat_key, cat_file, cat_dir;
  auto* cat = app.add_subcommand("catalog", "shipped catalog");
  cat->require_subcommand(1);
  cat->fallthrough();
  auto* cat_list = cat->add_subcommand("list", "list keys");
  auto* cat_show = cat->add_subcommand("show", "print an entry");
  cat_show->add_option("key", cat_key)->required();
  auto* cat_persist = cat->add_subcommand("persist", "verify a file and store it under a key");
  cat_persist->add_option("key", cat_key)->required();
  cat_persist->add_option("file", cat_file)->required();
  cat_persist->add_option("--dir", cat_dir, "catalog directory (default: first IPBD_CATALOG_DIR entry)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*adm) return run_admissible(G, adm_shape);
    if (*gen) return run_gen(G, gen_args);
    if (*srch) return run_search(G, search_shape, search_args);
    if (*cons) return run_construct(G, cons_shape);
    if (*ver) return run_verify(G, verify_path);
    if (*imols) return run_app_imols(G, app_args);
    if (*pack) return run_app_packing(G, app_args);
    if (*cov) return run_app_covering(G, app_args);
    if (*cat_list) return run_catalog_list(G);
    if (*cat_show) return run_catalog_show(G, cat_key);
    if (*cat_persist) return run_catalog_persist(cat_key, cat_file, cat_dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const IngredientError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
