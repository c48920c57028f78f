#include <random>

#include "doctest.h"
#include "ipbd/catalog.hpp"
#include "ipbd/compose.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/resolve.hpp"
#include "ipbd/verify.hpp"

using namespace ipbd;

namespace {

const BlockSizeSet K3 = BlockSizeSet::from({3});
const BlockSizeSet K4 = BlockSizeSet::from({4});

Resolver& shared() {
  static Resolver R;
  return R;
}

Design need(const IngredientRequest& r) {
  auto d = shared().resolve(r);
  REQUIRE_MESSAGE(d.has_value(), r.describe());
  return *d;
}

std::vector<int> sorted_sizes(const Design& d) {
  auto s = group_sizes(d);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("request descriptions and shapes") {
  CHECK(IngredientRequest::gdd({2, 2, 2}, K3).describe() == "GDD(2^3,{3})");
  CHECK(IngredientRequest::ipbd(13, 4, K4).describe() == "IPBD((13;4),{4})");
  CHECK(IngredientRequest::pbd(3, K3, 2).describe() == "PBD_2(3,{3})");
  CHECK(IngredientRequest::gdd({4, 2, 0, 2}, K3).describe() == "GDD(2^2 4^1,{3})");
  CHECK(IngredientRequest::igdd(3, 1, 4, K4).point_count() == 12);
  CHECK(IngredientRequest::ipbd(7, 3, K3).matches(need(IngredientRequest::ipbd(7, 3, K3))));
  CHECK_FALSE(IngredientRequest::ipbd(7, 3, K4).matches(need(IngredientRequest::ipbd(7, 3, K3))));
  CHECK(admissible(IngredientRequest::gdd({2, 2, 2, 2, 6}, K3)));
  CHECK_FALSE(admissible(IngredientRequest::gdd({2, 2, 4}, K3)));
}

TEST_CASE("fundamental construction") {
  auto src = shared().source(2);
  const Design fano = steiner_triple(7);
  const Design d = wfc(fano, WeightAssignment(7, 2), K3, src);
  CHECK(verify_design(d));
  CHECK(sorted_sizes(d) == std::vector<int>(7, 2));
  WeightAssignment w(9, 1);
  w[0] = 0;
  const Design t = wfc(transversal_design(3, 3), w, BlockSizeSet::from({2, 3}), src);
  CHECK(verify_design(t));
  CHECK(sorted_sizes(t) == std::vector<int>{2, 3, 3});
  CHECK_THROWS_AS(wfc(fano, WeightAssignment(6, 1), K3, src), PreconditionError);
}

TEST_CASE("missing ingredients name the request") {
  IngredientSource none = [](const IngredientRequest& r) -> Design {
    throw IngredientError(r.describe(), "unavailable");
  };
  try {
    wfc(steiner_triple(7), WeightAssignment(7, 2), K3, none);
    FAIL("expected IngredientError");
  } catch (const IngredientError& e) {
    CHECK(e.request().find("GDD(2^3,{3})") != std::string::npos);
  }
}

TEST_CASE("break blocks and fill hole") {
  auto src = shared().source(2);
  const Design pg = projective_plane(2);
  Design big = pg;
  big.block_sizes = BlockSizeSet::from({3, 7});
  big.blocks = {{0, 1, 2, 3, 4, 5, 6}};
  const Design broken = break_blocks(big, K3, src);
  CHECK(verify_design(broken));
  CHECK(broken.blocks.size() == 7);

  const Design outer = need(IngredientRequest::ipbd(13, 4, K4));
  const Design inner = need(IngredientRequest::pbd(4, K4));
  const Design filled = fill_hole(outer, inner);
  CHECK(verify_design(filled));
  CHECK(std::holds_alternative<PbdKind>(filled.kind));
  CHECK(filled.blocks.size() == 13);

  Design wrong = inner;
  wrong.n_points = 5;
  CHECK_THROWS(fill_hole(outer, wrong));
}

TEST_CASE("igdd fill parameters") {
  // IGDD((5;1)^3) + IPBD((7;3)) gives IPBD((17;5)): v-w = 3*4, w = 2*1 + 3.
  const Design igdd = need(IngredientRequest::igdd(5, 1, 3, K3));
  const Design filler = need(IngredientRequest::ipbd(7, 3, K3));
  const Design d = igdd_fill(igdd, filler);
  CHECK(verify_design(d));
  CHECK(d.n_points == 17);
  CHECK(hole_points(d).size() == 5);
  CHECK_THROWS_AS(igdd_fill(igdd, need(IngredientRequest::ipbd(9, 3, K3))), PreconditionError);
}

TEST_CASE("igdd fill with a gdd") {
  // IGDD((5;1)^3) + GDD(2^2 2^1): n = 3*2, w = 1*2 + 2.
  const Design igdd = need(IngredientRequest::igdd(5, 1, 3, K3));
  const Design filler = need(IngredientRequest::gdd({2, 2, 2}, K3));
  const Design d = igdd_fill_gdd(igdd, filler, 2);
  CHECK(verify_design(d));
  CHECK(sorted_sizes(d) == std::vector<int>{2, 2, 2, 2, 2, 2, 4});
}

TEST_CASE("inflation") {
  auto src = shared().source(2);
  const Design base = need(IngredientRequest::ipbd(7, 3, K3));
  for (int g : {1, 2, 3, 4}) {
    const Design d = inflate(base, g, K3, src);
    CHECK(verify_design(d));
    std::vector<int> want(4, g);
    want.push_back(3 * g);
    std::sort(want.begin(), want.end());
    CHECK(sorted_sizes(d) == want);
  }
}

TEST_CASE("projective extension") {
  const Design ag = affine_plane(3);
  const Design full = projective_extend(ag);
  CHECK(verify_design(full));
  CHECK(full.n_points == 13);
  CHECK(hole_points(full).size() == 4);
  CHECK(blocks_meet_hole(full));
  for (std::size_t r = 1; r <= 4; ++r) {
    const Design part = projective_extend(ag, r);
    CHECK(verify_design(part));
    CHECK(part.n_points == 9 + static_cast<int>(r));
  }
  // PBD(2,{2}) has one class; one new point gives the single triple.
  const Design edge = one_factorization(2);
  const Design tri = projective_extend(edge);
  CHECK(tri.n_points == 3);
  CHECK(tri.blocks.size() == 1);
  const Design gdd = projective_extend(resolvable_transversal_design(3, 3));
  CHECK(verify_design(gdd));
  CHECK(sorted_sizes(gdd) == std::vector<int>{3, 3, 3, 3});
  CHECK_THROWS_AS(projective_extend(steiner_triple(7)), PreconditionError);
}

TEST_CASE("group filling and truncated transversal designs") {
  auto src = shared().source(2);
  const Design gdd = need(IngredientRequest::gdd({6, 6, 6}, K3));
  const Design d = fill_groups_with_ipbds(gdd, 3, K3, src);
  CHECK(verify_design(d));
  CHECK(d.n_points == 21);
  CHECK(hole_points(d).size() == 9);

  const Design td = transversal_design(4, 3);
  const Design t = truncate_weight_td(td, 2, {1, 1, 1}, 1, BlockSizeSet::from({3, 4}), src);
  CHECK(verify_design(t));
  CHECK(sorted_sizes(t) == std::vector<int>{2, 3, 3, 3});
}

TEST_CASE("hgdd fill and index expansion") {
  auto src = shared().source(2);
  const Design e = expand_index(need(IngredientRequest::ipbd(7, 3, K3)), 2, K3, src);
  CHECK(verify_design(e));
  CHECK(e.lambda == 2);
  CHECK(e.blocks.size() == 2 * 6);

  const Design h = need(IngredientRequest::hgdd(3, 1, 3, K3));
  const Design filler = need(IngredientRequest::gdd({1, 1, 1}, K3));
  const Design f = fill_hgdd(h, filler);
  CHECK(verify_design(f));
  CHECK(sorted_sizes(f) == std::vector<int>{3, 3, 3});
}

TEST_CASE("compose outputs always verify on random weightings") {
  // Constant weight on TD(3,4) with random zeros in the last group; blocks
  // through a zero become GDD(w^2,{2,3}).
  std::mt19937_64 rng(2024);
  auto src = shared().source(2);
  const Design td = transversal_design(3, 4);
  const auto K23 = BlockSizeSet::from({2, 3});
  for (int t = 0; t < 15; ++t) {
    const int w0 = 1 + static_cast<int>(rng() % 3);
    WeightAssignment w(12, w0);
    for (int p = 8; p < 12; ++p) {
      if (rng() % 2) w[p] = 0;
    }
    const Design d = wfc(td, w, K23, src);
    CHECK(verify_design(d));
    int total = 0;
    for (int x : w) total += x;
    CHECK(d.n_points == total);
  }
}
