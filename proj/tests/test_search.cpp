#include "doctest.h"
#include "ipbd/search.hpp"
#include "ipbd/verify.hpp"

using namespace ipbd;

namespace {

SearchResult run(SearchProblem p) {
  p.time_budget = 60;
  return search(p);
}

}  // namespace

TEST_CASE("labeled Steiner triple system counts") {
  // 7!/168 = 30 labeled Fano planes; 9!/432 = 840 labeled AG(2,3).
  auto p7 = ipbd_problem(7, 0, BlockSizeSet::from({3}));
  p7.enumerate_all = true;
  CHECK(run(p7).solutions == 30);
  auto p9 = ipbd_problem(9, 0, BlockSizeSet::from({3}));
  p9.enumerate_all = true;
  CHECK(run(p9).solutions == 840);
}

TEST_CASE("inadmissible or impossible shapes are nonexistent") {
  const auto r = run(ipbd_problem(6, 0, BlockSizeSet::from({3})));
  CHECK(r.status == SearchStatus::nonexistent);
  CHECK_FALSE(r.design);
  CHECK(run(ipbd_problem(7, 2, BlockSizeSet::parse("3..7"))).status == SearchStatus::nonexistent);
  CHECK(run(ipbd_problem(8, 2, BlockSizeSet::parse("3..8"))).status == SearchStatus::nonexistent);
  CHECK(run(ipbd_problem(11, 4, BlockSizeSet::parse("3..11"))).status == SearchStatus::nonexistent);
}

TEST_CASE("found designs verify") {
  for (auto [v, w] : std::vector<std::pair<int, int>>{{7, 3}, {9, 3}, {11, 5}, {13, 3}, {15, 7}}) {
    const auto r = run(ipbd_problem(v, w, BlockSizeSet::from({3})));
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify_design(*r.design));
    CHECK(hole_points(*r.design).size() == static_cast<std::size_t>(w));
  }
  const int gs[] = {2, 2, 2, 4};
  const auto g = run(gdd_problem(gs, BlockSizeSet::from({3})));
  REQUIRE(g.status == SearchStatus::found);
  CHECK(verify_design(*g.design));
  const auto ig = run(igdd_problem(3, 1, 4, BlockSizeSet::from({4})));
  REQUIRE(ig.status == SearchStatus::found);
  CHECK(verify_design(*ig.design));
  const auto hg = run(hgdd_problem(3, 1, 3, BlockSizeSet::from({3})));
  REQUIRE(hg.status == SearchStatus::found);
  CHECK(verify_design(*hg.design));
}

TEST_CASE("resolvable search") {
  auto p = ipbd_problem(9, 0, BlockSizeSet::from({3}));
  p.require_resolution = true;
  const auto r = run(p);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.design->resolution->classes.size() == 4);
  CHECK(verify_design(*r.design));
  auto q = ipbd_problem(7, 0, BlockSizeSet::from({3}));
  q.require_resolution = true;
  CHECK(run(q).status == SearchStatus::nonexistent);
}

TEST_CASE("budgets are reported, not mistaken for nonexistence") {
  auto p = ipbd_problem(13, 2, BlockSizeSet::parse("3..13"));
  p.node_budget = 200;
  const auto r = search(p);
  CHECK(r.status == SearchStatus::budget_exhausted);
  CHECK(r.nodes <= 1024);
  auto t = ipbd_problem(13, 2, BlockSizeSet::parse("3..13"));
  t.time_budget = 1e-4;
  CHECK(search(t).status == SearchStatus::budget_exhausted);
}

TEST_CASE("symmetry modes and workers agree on existence") {
  for (auto mode : {SymmetryMode::none, SymmetryMode::first_level, SymmetryMode::all_levels}) {
    for (int workers : {1, 3}) {
      auto p = ipbd_problem(10, 2, BlockSizeSet::parse("3..10"));
      p.symmetry = mode;
      p.workers = workers;
      CHECK(run(p).status == SearchStatus::nonexistent);
      auto f = ipbd_problem(11, 2, BlockSizeSet::parse("3..11"));
      f.symmetry = mode;
      f.workers = workers;
      const auto r = run(f);
      REQUIRE(r.status == SearchStatus::found);
      CHECK(verify_design(*r.design));
    }
  }
}

TEST_CASE("single worker search is deterministic") {
  const auto a = run(ipbd_problem(13, 3, BlockSizeSet::parse("3..13")));
  const auto b = run(ipbd_problem(13, 3, BlockSizeSet::parse("3..13")));
  REQUIRE(a.design);
  CHECK(a.design->blocks == b.design->blocks);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("search preconditions") {
  auto p = ipbd_problem(30, 0, BlockSizeSet::from({3}));
  CHECK_THROWS_AS(search(p), PreconditionError);
  p = ipbd_problem(7, 0, BlockSizeSet::from({3}));
  p.kind = PackingKind{};
  CHECK_THROWS_AS(search(p), PreconditionError);
}
