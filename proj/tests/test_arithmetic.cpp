#include <random>

#include "doctest.h"
#include "ipbd/arithmetic.hpp"
#include "oracles.hpp"

using namespace ipbd;

TEST_CASE("derive_params matches hand gcds") {
  CHECK(derive_params({3}).alpha() == 2);
  CHECK(derive_params({3}).beta() == 6);
  CHECK(derive_params({4}).alpha() == 3);
  CHECK(derive_params({4}).beta() == 12);
  CHECK(derive_params({3, 4, 5}).alpha() == 1);
  CHECK(derive_params({3, 4, 5}).beta() == 2);
  CHECK(derive_params({4, 7}).alpha() == 3);
  CHECK(derive_params({4, 7}).beta() == 6);
  CHECK(derive_params({4, 7}).gamma() == 2);
  CHECK(derive_params({3, 5}).alpha() == 2);
  CHECK(derive_params({3, 5}).beta() == 2);
}

TEST_CASE("pbd admissibility for triples is v = 1, 3 mod 6") {
  const auto K = BlockSizeSet::from({3});
  for (int v = 1; v < 200; ++v) {
    CHECK(bool(admissible_pbd(v, K)) == (v % 6 == 1 || v % 6 == 3));
  }
}

TEST_CASE("ipbd admissibility for triples agrees with the direct oracle") {
  const auto K = BlockSizeSet::from({3});
  for (int v = 0; v <= 100; ++v) {
    for (int w = 0; w <= v; ++w) {
      CHECK_MESSAGE(bool(admissible_ipbd(v, w, K)) == oracle::ipbd_k3(v, w), "v=" << v << " w=" << w);
    }
  }
}

TEST_CASE("admissibility reports the failing condition") {
  const auto K = BlockSizeSet::from({3});
  auto a = admissible_ipbd(7, 3, K);
  CHECK(a.holds);
  CHECK(a.reason == "all conditions hold");
  CHECK(admissible_ipbd(9, 4, K).condition == "local");
  CHECK(admissible_ipbd(13, 7, K).condition == "hole-bound");
  CHECK(admissible_ipbd(7, 7, K).condition == "range");
  CHECK(admissible_ipbd(11, 5, K).holds);
}

TEST_CASE("a hole of size one reduces to the pbd conditions") {
  for (const auto& s : std::vector<std::vector<int>>{{3}, {4}, {3, 5}, {4, 7}, {5}}) {
    const auto K = BlockSizeSet::from(s);
    for (int v = 2; v < 120; ++v) CHECK(bool(admissible_ipbd(v, 1, K)) == bool(admissible_pbd(v, K)));
  }
}

TEST_CASE("index lambda admissibility") {
  const auto K = BlockSizeSet::from({3});
  CHECK(admissible_ipbd_lambda(6, 1, K, 2).holds);  // PBD_2(6,{3}) exists
  CHECK_FALSE(admissible_ipbd_lambda(6, 1, K, 1).holds);
  CHECK(admissible_ipbd_lambda(6, 0, K, 2).condition == "range");
  CHECK(admissible_ipbd_lambda(8, 2, K, 0).holds);
  for (int v = 3; v < 40; ++v) {
    for (int w = 0; w < v; ++w) {
      CHECK(bool(admissible_ipbd_lambda(v, w, K, 1)) == bool(admissible_ipbd(v, w, K)));
    }
  }
}

TEST_CASE("gdd admissibility") {
  const auto K3 = BlockSizeSet::from({3});
  const auto K4 = BlockSizeSet::from({4});
  CHECK(admissible_gdd_uniform(2, 3, K3));
  CHECK_FALSE(admissible_gdd_uniform(2, 5, K3));
  CHECK(admissible_gdd_uniform(6, 4, K3));
  CHECK(admissible_gdd_gnh1(6, 6, 15, K4));
  CHECK(admissible_gdd_gnh1(6, 4, 15, K4).condition == "hole-bound");
  CHECK(admissible_gdd_gnh1(2, 4, 6, K3));
  CHECK_FALSE(admissible_gdd_gnh1(2, 2, 4, K3));  // hole bound g(n-1) >= (k-2)h fails
  for (int g = 1; g < 8; ++g) {
    // Two groups of size g carry no triples, so h = g needs n >= 2.
    for (int n = 2; n < 12; ++n) {
      CHECK(bool(admissible_gdd_gnh1(g, n, g, K3)) == bool(admissible_gdd_uniform(g, n + 1, K3)));
    }
  }
}

TEST_CASE("igdd and resolvable gdd admissibility") {
  const auto K3 = BlockSizeSet::from({3});
  for (int u = 2; u < 12; ++u) {
    CHECK(bool(admissible_igdd(3, 1, u, K3)) == (u % 2 == 1 && (8 * u * (u - 1)) % 6 == 0));
    for (int g = 1; g < 7; ++g) {
      CHECK(bool(admissible_igdd(g, 0, u, K3)) == bool(admissible_gdd_uniform(g, u, K3)));
    }
  }
  CHECK(admissible_rgdd(1, 9, 3));
  CHECK_FALSE(admissible_rgdd(1, 7, 3));
  CHECK(admissible_rgdd(2, 6, 3));
}

TEST_CASE("alpha star examples and lattice oracle") {
  CHECK(alpha_star({2, 2, 2}, 3) == 2);
  CHECK(alpha_star({1, 1}, 1) == 1);
  CHECK(alpha_star({3, 3, 3, 3}, 6) == 3);
  CHECK_THROWS_AS(alpha_star({1, 1}, 2), PreconditionError);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 80; ++t) {
    std::vector<i64> deg;
    i64 m = 0;
    int n = 0;
    const int cliques = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < cliques && n < 10; ++c) {
      const int s = 2 + static_cast<int>(rng() % 4);
      if (n + s > 12) break;
      for (int i = 0; i < s; ++i) deg.push_back(s - 1);
      m += s * (s - 1) / 2;
      n += s;
    }
    if (m == 0) continue;
    CHECK(alpha_star(deg, m) == oracle::alpha_star_bfs(deg, m));
  }
}

TEST_CASE("alpha star divides 2m / alpha on clique unions") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> K = {3 + static_cast<int>(rng() % 4), 3 + static_cast<int>(rng() % 5)};
    const auto B = BlockSizeSet::from(K);
    // Disjoint cliques of sizes k-1 for k in K.
    std::vector<i64> deg;
    i64 m = 0;
    for (int k : B.sizes()) {
      const int copies = 1 + static_cast<int>(rng() % 2);
      for (int c = 0; c < copies; ++c) {
        for (int i = 0; i < k - 1; ++i) deg.push_back(k - 2);
        m += static_cast<i64>(k - 1) * (k - 2) / 2;
      }
    }
    if (m == 0) continue;
    const i64 a = alpha_star(deg, m);
    CHECK(a > 0);
    if ((2 * m) % B.alpha() == 0) CHECK((2 * m / B.alpha()) % a == 0);
  }
}

TEST_CASE("crt plans satisfy their identities") {
  const auto plan = crt_plan(0, 0, 3, 2, 3);
  CHECK(plan.u == 2);
  CHECK(plan.h == 2);
  CHECK(check_plan(plan).empty());
  const auto trivial = crt_plan(4, 1, 7, 1, 1);
  CHECK(trivial.u == 4);
  CHECK_THROWS_AS(crt_plan(0, 0, 4, 2, 3), PreconditionError);
  std::mt19937_64 rng(3);
  for (const i64 M1 : {6, 12, 30, 60, 36}) {
    for (int t = 0; t < 40; ++t) {
      const i64 n0 = static_cast<i64>(rng() % M1), s0 = static_cast<i64>(rng() % M1);
      if (!admissible_residue_pair(n0, s0, M1, 2, 3)) {
        CHECK_THROWS_AS(crt_plan(n0, s0, M1, 2, 3), PlanInfeasible);
        continue;
      }
      const auto p = crt_plan(n0, s0, M1, 2, 3);
      CHECK(check_plan(p).empty());
      CHECK(oracle::md(p.u * p.x - n0, M1) == 0);
    }
  }
}

TEST_CASE("hole sums agree with enumeration") {
  CHECK(realizable_hole_sums(3, 1, 2) == std::vector<i64>{3, 4, 5, 6});
  CHECK(realizable_hole_sums(1, 4, 9) == std::vector<i64>{1, 5, 9});
  for (i64 A = 1; A <= 8; ++A) {
    for (i64 g = 1; g <= 4; ++g) {
      for (i64 x = 1; x <= 12; ++x) {
        const auto got = realizable_hole_sums(A, g, x);
        const auto want = oracle::hole_sums_enum(A, g, x);
        CHECK(std::vector<i64>(want.begin(), want.end()) == got);
        const i64 D = hole_sum_progression_end(A, g, x);
        for (i64 s = A; s <= D; s += g) CHECK(want.count(s) == 1);
        CHECK(want.count(D + g) == 0);
      }
    }
  }
}

TEST_CASE("johnson and schonheim bounds") {
  CHECK(johnson_bound(5, 3) == 3);
  CHECK(johnson_bound(7, 3) == 7);
  CHECK(johnson_bound(11, 3) == 18);
  for (int k = 2; k < 9; ++k) CHECK(johnson_bound(k, k) == 1);
  CHECK(schonheim_bound(10, 3) == 17);
  CHECK(schonheim_bound(6, 3) == 6);
  CHECK_THROWS_AS(johnson_bound(2, 3), PreconditionError);
}

TEST_CASE("modular helpers") {
  CHECK(mod(-1, 6) == 5);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_FALSE(mod_inverse(2, 4).has_value());
  CHECK(factorize(360) == std::vector<std::pair<i64, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}
