// Ingredient resolution and end-to-end constructions.
//
// A request is answered, in order, from the memo and catalog, the direct
// generators, exhaustive search within budget and finally one level of the
// recursive constructions; recursion consumes one unit of the depth budget.
// Every returned design has the requested shape and has been verified.
#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipbd/compose.hpp"
#include "ipbd/search.hpp"
#include "json.hpp"

namespace ipbd {

inline constexpr int kDefaultDepth = 3;

struct ResolveOptions {
  int depth = kDefaultDepth;
  bool use_search = true;
  int search_cap = 16;  // largest point count handed to the searcher
  long long node_budget = 2'000'000;
  double time_budget = 10.0;  // seconds per search call
  int workers = 1;
};

/// One step of a construction attempt. `step` names the mechanism
/// ("catalog", "generator", "search", "igdd_fill", ...), `subject` the
/// requested shape.
struct TraceNode {
  std::string step;
  std::string subject;
  bool ok = false;
  std::string detail;
  std::vector<TraceNode> children;

  TraceNode& child(std::string step, std::string subject);
  /// Indented text, one line per node.
  [[nodiscard]] std::string render(int indent = 0) const;
  [[nodiscard]] nlohmann::json to_json() const;
};

class Resolver {
 public:
  explicit Resolver(ResolveOptions options = {});

  /// A verified design of the requested shape, or nullopt. When `trace` is
  /// given the attempt tree is appended to it.
  std::optional<Design> resolve(const IngredientRequest& request, TraceNode* trace = nullptr);
  std::optional<Design> resolve(const IngredientRequest& request, int depth, TraceNode* trace);

  /// Source for the compose operators; throws IngredientError on failure
  /// and records attempts under `trace` when given.
  IngredientSource source(int depth, TraceNode* trace = nullptr);

  void remember(const IngredientRequest& request, const Design& design);
  [[nodiscard]] std::size_t memo_size() const;
  [[nodiscard]] const ResolveOptions& options() const { return options_; }

 private:
  ResolveOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, Design> memo_;
  std::set<std::string> nonexistent_;  // proved by exhaustive search

  std::optional<Design> lookup(const std::string& key) const;
  std::optional<Design> direct(const IngredientRequest& request, int depth, TraceNode& trace);
  std::optional<Design> searched(const IngredientRequest& request, TraceNode& trace, bool& proved);
  std::optional<Design> recursive(const IngredientRequest& request, int depth, TraceNode& trace);

  friend struct Recipes;
};

struct ConstructionResult {
  std::optional<Design> design;
  TraceNode trace;
};

/// IPBD((v;w), K): direct resolution, projective extension of a resolvable
/// base, group filling of a (truncated, weighted) TD and IGDD filling, in
/// that order. Throws PreconditionError when the parameters are not
/// admissible; otherwise a failed attempt is reported in the trace.
ConstructionResult construct_ipbd(int v, int w, const BlockSizeSet& K, Resolver& resolver);

/// GDD(g^n h^1, K), or GDD(g^n, K) when h = 0: direct resolution,
/// inflation of an IPBD template and IGDD filling with a GDD.
ConstructionResult construct_gdd(int g, int n, int h, const BlockSizeSet& K, Resolver& resolver);

/// Returns `design` relabeled into the kind and layout of `request`
/// (e.g. a PBD answering a GDD(1^v) request). Throws PreconditionError when
/// the shapes are incompatible.
Design reshape(const IngredientRequest& request, const Design& design);

}  // namespace ipbd
