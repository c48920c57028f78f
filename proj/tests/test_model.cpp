#include <random>

#include "doctest.h"
#include "ipbd/design_io.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/verify.hpp"
#include "oracles.hpp"

using namespace ipbd;

TEST_CASE("block size sets parse lists and ranges") {
  CHECK(BlockSizeSet::parse("3,4,5") == BlockSizeSet::from({5, 4, 3}));
  CHECK(BlockSizeSet::parse("3..7") == BlockSizeSet::from({3, 4, 5, 6, 7}));
  CHECK(BlockSizeSet::parse("3,5..6") == BlockSizeSet::from({3, 5, 6}));
  CHECK(BlockSizeSet::from({4, 4, 3}).sizes().size() == 2);
  CHECK_THROWS_AS(BlockSizeSet::from({}), std::invalid_argument);
  CHECK_THROWS_AS(BlockSizeSet::from({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(BlockSizeSet::parse("3,x"), std::invalid_argument);
}

TEST_CASE("moduli satisfy alpha gamma = beta with coprime factors") {
  const std::vector<std::vector<int>> sets = {{3}, {4}, {3, 4, 5}, {4, 7}, {3, 5}, {2}, {5, 9}, {6, 10, 15}};
  for (const auto& s : sets) {
    const auto K = BlockSizeSet::from(s);
    CHECK(K.alpha() == oracle::alpha_of(s));
    CHECK(K.beta() == oracle::beta_of(s));
    CHECK(K.alpha() * K.gamma() == K.beta());
    CHECK(std::gcd(K.alpha(), K.gamma()) == 1);
  }
}

TEST_CASE("normalize moves the hole to the end and is idempotent") {
  Design d = projective_plane(3);
  Design ip = d;
  ip.kind = IpbdKind{ip.blocks.front()};
  ip.blocks.erase(ip.blocks.begin());
  const Design n1 = normalize(ip);
  CHECK(hole_points(n1) == trailing_range(13, 4));
  CHECK(verify_design(n1));
  const Design n2 = normalize(n1);
  CHECK(n2.blocks == n1.blocks);
}

TEST_CASE("relabel preserves validity for every kind") {
  std::mt19937_64 rng(7);
  std::vector<Design> ds = {steiner_triple(9), transversal_design(4, 3), affine_plane(3)};
  for (const auto& d : ds) {
    for (int t = 0; t < 5; ++t) {
      const auto perm = oracle::random_perm(d.n_points, rng);
      CHECK(verify_design(relabel(d, perm)));
    }
  }
}

TEST_CASE("check_structure rejects malformed input") {
  Design d;
  d.n_points = 4;
  d.block_sizes = BlockSizeSet::from({3});
  d.blocks = {{0, 1, 5}};
  CHECK_THROWS_AS(check_structure(d), StructuralError);
  d.blocks = {{0, 1, 1}};
  CHECK_THROWS_AS(check_structure(d), StructuralError);
  d.blocks = {{0, 1, 2}};
  d.kind = GddKind{{{0, 1}, {1, 2, 3}}};
  CHECK_THROWS_AS(check_structure(d), StructuralError);
}

TEST_CASE("design documents round trip") {
  std::vector<Design> ds = {steiner_triple(7), affine_plane(3), transversal_design(3, 4),
                            resolvable_transversal_design(3, 3), one_factorization(6)};
  Design ip = projective_plane(3);
  ip.kind = IpbdKind{ip.blocks.front()};
  ip.blocks.erase(ip.blocks.begin());
  ds.push_back(normalize(ip));
  for (const auto& d0 : ds) {
    const Design d = normalize(d0);
    const auto doc = io::to_json(d);
    const Design back = io::design_from_json(doc);
    CHECK(back.n_points == d.n_points);
    CHECK(back.blocks == d.blocks);
    CHECK(kind_tag(back.kind) == kind_tag(d.kind));
    CHECK(group_sizes(back) == group_sizes(d));
    CHECK(back.resolution.has_value() == d.resolution.has_value());
    CHECK(io::to_json(back) == doc);
    CHECK(verify_design(back));
  }
}

TEST_CASE("latin documents accept flat and nested squares") {
  const auto L = mols(3, 2);
  const auto doc = io::to_json(L);
  const auto back = io::latin_from_json(doc);
  CHECK(back.squares == L.squares);
  io::json nested = {{"n", 2}, {"m", 0}, {"squares", {{{0, 1}, {1, 0}}}}};
  const auto s = io::latin_from_json(nested);
  CHECK(s.n == 2);
  CHECK(s.at(0, 1, 0) == 1);
  CHECK(verify_latin(s));
}

TEST_CASE("malformed documents are structural errors") {
  CHECK_THROWS_AS(io::parse_document("{\"kind\":\"pbd\"}"), StructuralError);
  CHECK_THROWS_AS(io::parse_document("[1,2]"), StructuralError);
  CHECK_THROWS_AS(io::parse_document("{\"kind\":\"nope\",\"v\":3,\"K\":[3],\"blocks\":[]}"), StructuralError);
  CHECK_THROWS_AS(io::parse_document("{\"kind\":\"gdd\",\"v\":4,\"groups\":[2,1],\"K\":[3],\"blocks\":[]}"),
                  StructuralError);
}
