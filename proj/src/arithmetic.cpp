#include "ipbd/arithmetic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace ipbd {

Admissibility Admissibility::ok() { return {true, "", "all conditions hold"}; }

Admissibility Admissibility::fail(std::string condition, std::string reason) {
  return {false, std::move(condition), std::move(reason)};
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

std::optional<i64> mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, m);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    int t = 0;
    while (n % p == 0) {
      n /= p;
      ++t;
    }
    if (t) out.emplace_back(p, t);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

BlockSizeSet derive_params(const std::vector<int>& sizes) {
  return BlockSizeSet::from(sizes);
}

namespace {

std::string str(i64 x) { return std::to_string(x); }

}  // namespace

Admissibility admissible_pbd(i64 v, const BlockSizeSet& K) {
  const i64 a = K.alpha(), b = K.beta();
  if (mod(v - 1, a) != 0) {
    return Admissibility::fail("local", "v-1 = " + str(v - 1) + " is not 0 mod alpha = " + str(a));
  }
  if (mod(v * (v - 1), b) != 0) {
    return Admissibility::fail("global",
                               "v(v-1) = " + str(v * (v - 1)) + " is not 0 mod beta = " + str(b));
  }
  return Admissibility::ok();
}

Admissibility admissible_ipbd(i64 v, i64 w, const BlockSizeSet& K) {
  return admissible_ipbd_lambda(v, w, K, 1);
}

Admissibility admissible_ipbd_lambda(i64 v, i64 w, const BlockSizeSet& K, i64 lambda) {
  if (w < 1 || w > v) return Admissibility::fail("range", "need 1 <= w <= v");
  if (w == v) return Admissibility::fail("range", "w = v leaves no pairs to cover");
  if (lambda == 0) return Admissibility::ok();
  const i64 a = K.alpha(), b = K.beta(), k = K.k_min();
  if (mod(lambda * (v - 1), a) != 0) {
    return Admissibility::fail("local", "lambda(v-1) = " + str(lambda * (v - 1)) +
                                            " is not 0 mod alpha = " + str(a));
  }
  if (mod(lambda * (w - 1), a) != 0) {
    return Admissibility::fail("local", "lambda(w-1) = " + str(lambda * (w - 1)) +
                                            " is not 0 mod alpha = " + str(a));
  }
  const i64 pairs2 = v * (v - 1) - w * (w - 1);
  if (mod(lambda * pairs2, b) != 0) {
    return Admissibility::fail("global", "lambda(v(v-1) - w(w-1)) = " + str(lambda * pairs2) +
                                             " is not 0 mod beta = " + str(b));
  }
  if (w >= 2 && v < (k - 1) * w + 1) {
    return Admissibility::fail("hole-bound", "v = " + str(v) + " < (k-1)w + 1 = " +
                                                 str((k - 1) * w + 1));
  }
  return Admissibility::ok();
}

Admissibility admissible_gdd_uniform(i64 g, i64 u, const BlockSizeSet& K) {
  const i64 a = K.alpha(), b = K.beta();
  if (mod(g * (u - 1), a) != 0) {
    return Admissibility::fail("local", "g(u-1) = " + str(g * (u - 1)) +
                                            " is not 0 mod alpha = " + str(a));
  }
  if (mod(g * g * u * (u - 1), b) != 0) {
    return Admissibility::fail("global", "g^2 u(u-1) = " + str(g * g * u * (u - 1)) +
                                             " is not 0 mod beta = " + str(b));
  }
  return Admissibility::ok();
}

Admissibility admissible_gdd_gnh1(i64 g, i64 n, i64 h, const BlockSizeSet& K) {
  const i64 a = K.alpha(), b = K.beta(), k = K.k_min();
  if (mod(g * n, a) != 0) {
    return Admissibility::fail("local", "gn = " + str(g * n) + " is not 0 mod alpha = " + str(a));
  }
  if (mod(h - g, a) != 0) {
    return Admissibility::fail("local", "h-g = " + str(h - g) + " is not 0 mod alpha = " + str(a));
  }
  const i64 twice_edges = g * n * (g * (n - 1) + 2 * h);
  if (mod(twice_edges, b) != 0) {
    return Admissibility::fail("global", "gn(g(n-1)+2h) = " + str(twice_edges) +
                                             " is not 0 mod beta = " + str(b));
  }
  if (g * (n - 1) < (k - 2) * h) {
    return Admissibility::fail("hole-bound", "g(n-1) = " + str(g * (n - 1)) +
                                                 " < (k-2)h = " + str((k - 2) * h));
  }
  return Admissibility::ok();
}

Admissibility admissible_igdd(i64 g, i64 h, i64 u, const BlockSizeSet& K) {
  const i64 a = K.alpha(), b = K.beta(), k = K.k_min();
  if (mod(g * (u - 1), a) != 0) {
    return Admissibility::fail("local", "g(u-1) = " + str(g * (u - 1)) +
                                            " is not 0 mod alpha = " + str(a));
  }
  if (mod(h * (u - 1), a) != 0) {
    return Admissibility::fail("local", "h(u-1) = " + str(h * (u - 1)) +
                                            " is not 0 mod alpha = " + str(a));
  }
  const i64 twice_edges = (g * g - h * h) * u * (u - 1);
  if (mod(twice_edges, b) != 0) {
    return Admissibility::fail("global", "(g^2-h^2)u(u-1) = " + str(twice_edges) +
                                             " is not 0 mod beta = " + str(b));
  }
  if (g < (k - 1) * h) {
    return Admissibility::fail("hole-bound", "g = " + str(g) + " < (k-1)h = " + str((k - 1) * h));
  }
  return Admissibility::ok();
}

Admissibility admissible_rgdd(i64 g, i64 u, i64 k) {
  if (mod(g * u, k) != 0) {
    return Admissibility::fail("local", "gu = " + str(g * u) + " is not 0 mod k = " + str(k));
  }
  if (mod(g * (u - 1), k - 1) != 0) {
    return Admissibility::fail("global", "g(u-1) = " + str(g * (u - 1)) +
                                             " is not 0 mod k-1 = " + str(k - 1));
  }
  return Admissibility::ok();
}

i64 alpha_star(const std::vector<i64>& degrees, i64 n_edges) {
  if (n_edges <= 0) throw PreconditionError("alpha_star: need at least one edge");
  if (degrees.empty() ||
      std::accumulate(degrees.begin(), degrees.end(), i64{0}) != 2 * n_edges) {
    throw PreconditionError("alpha_star: degree sum must equal 2m");
  }
  // Lattice of (sum c_i d_i, sum c_i) is {(s d_1 + G t, s)}. Membership of
  // (a, a n / 2m) forces a = M j, s = n' j with n'/M = n/2m in lowest
  // terms, and then j (M - n' d_1) must lie in G Z.
  const i64 n = static_cast<i64>(degrees.size());
  const i64 d1 = degrees.front();
  i64 G = 0;
  for (i64 d : degrees) G = std::gcd(G, d - d1);
  const i64 c = std::gcd(n, 2 * n_edges);
  const i64 M = 2 * n_edges / c;
  const i64 np = n / c;
  const i64 step = G == 0 ? 1 : G / std::gcd(G, std::abs(M - np * d1));
  return M * step;
}

bool admissible_residue_pair(i64 n0, i64 s0, i64 M1, i64 alpha, i64 gamma) {
  (void)M1;
  return mod(n0 * (alpha * (n0 - 1) + 2 * alpha * s0), gamma) == 0;
}

namespace {

i64 ipow(i64 p, int t) {
  i64 r = 1;
  while (t-- > 0) r *= p;
  return r;
}

// Combines x = r_i mod m_i for pairwise coprime m_i.
i64 crt_combine(const std::vector<std::pair<i64, i64>>& parts) {
  i64 x = 0, m = 1;
  for (auto [r, mi] : parts) {
    i64 inv = *mod_inverse(m, mi);
    i64 t = mod((r - x) % mi * inv, mi);
    x += m * t;
    m *= mi;
    x = mod(x, m);
  }
  return x;
}

}  // namespace

CongruencePlan crt_plan(i64 n0, i64 s0, i64 M1, i64 alpha, i64 gamma) {
  if (M1 < 1 || alpha < 1 || gamma < 1) throw PreconditionError("crt_plan: moduli must be positive");
  if (M1 % gamma != 0) throw PreconditionError("crt_plan: gamma must divide M1");
  CongruencePlan plan;
  plan.M1 = M1;
  plan.n0 = mod(n0, M1);
  plan.s0 = mod(s0, M1);
  plan.alpha = alpha;
  plan.gamma = gamma;
  plan.prime_powers = factorize(M1);
  if (!admissible_residue_pair(plan.n0, plan.s0, M1, alpha, gamma)) {
    throw PlanInfeasible("residues n0 = " + std::to_string(plan.n0) +
                         ", s0 = " + std::to_string(plan.s0) +
                         " are not admissible modulo gamma = " + std::to_string(gamma));
  }
  std::vector<std::pair<i64, i64>> us, hs, ys;
  for (auto [p, t] : plan.prime_powers) {
    const i64 q = ipow(p, t);
    const i64 n = mod(plan.n0, q), s = mod(plan.s0, q);
    i64 u, h, y;
    if (p == 2) {
      auto inv = mod_inverse(1 - 2 * s, q);
      if (!inv) {
        throw PlanInfeasible("1-2s0 is not invertible modulo " + std::to_string(q));
      }
      u = mod(n * *inv, q);
      h = 0;
      y = s;
    } else {
      auto half = mod_inverse(2, q);
      if (!half) throw PlanInfeasible("2 is not invertible modulo " + std::to_string(q));
      u = *half;
      const i64 c = mod(1 - 2 * s - 2 * n, q);
      h = mod(alpha * c, q);
      // alpha y = alpha s0 - (u-1) h with h = alpha c gives y = s0 - (u-1) c.
      y = mod(s - mod(u - 1, q) * c, q);
    }
    us.emplace_back(u, q);
    hs.emplace_back(h, q);
    ys.emplace_back(y, q);
  }
  plan.u = crt_combine(us);
  plan.h = crt_combine(hs);
  plan.y = crt_combine(ys);
  plan.x = mod(1 - 2 * plan.y, M1);
  plan.g = mod(alpha * plan.x + plan.h, M1);
  if (auto bad = check_plan(plan); !bad.empty()) {
    throw PlanInfeasible("plan violates " + bad);
  }
  return plan;
}

std::string check_plan(const CongruencePlan& p) {
  const i64 M = p.M1;
  if (mod(p.alpha * p.y - (p.alpha * p.s0 - (p.u - 1) * p.h), M) != 0) {
    return "alpha y = alpha s0 - (u-1) h";
  }
  if (mod(p.x - (1 - 2 * p.y), M) != 0) return "x = 1 - 2y";
  if (mod(p.g - (p.alpha * p.x + p.h), M) != 0) return "g = alpha x + h";
  if (mod(p.u * p.x - p.n0, M) != 0) return "n = ux";
  if (mod(p.h * (p.u - 1) + p.alpha * p.y - p.alpha * p.s0, M) != 0) {
    return "w = h(u-1) + alpha y";
  }
  const i64 lhs = p.alpha * p.n0 - p.alpha * p.u * (1 - 2 * p.s0);
  const i64 rhs = 2 * p.u * (p.u - 1) * p.h;
  if (mod(lhs - rhs, p.gamma) != 0) return "u-congruence mod gamma";
  for (auto [q, t] : p.prime_powers) {
    const i64 qt = ipow(q, t);
    if (q == 2) {
      if (mod(p.h, qt) != 0) return "h = 0 mod 2-part";
      if (mod(p.u * (1 - 2 * p.s0) - p.n0, qt) != 0) return "u = n0/(1-2s0) mod 2-part";
    } else {
      if (mod(2 * p.u - 1, qt) != 0) return "u = 1/2 mod odd part";
      if (mod(p.h - p.alpha * (1 - 2 * p.s0 - 2 * p.n0), qt) != 0) return "h mod odd part";
    }
  }
  return "";
}

std::vector<i64> realizable_hole_sums(i64 A, i64 gamma, i64 x_star) {
  std::set<i64> sums;
  for (i64 i = 0; i <= A; ++i) {
    const i64 base = i + (A - i) * x_star;
    for (i64 j = 0; j <= i; ++j) sums.insert(base + gamma * j);
  }
  return {sums.begin(), sums.end()};
}

i64 hole_sum_progression_end(i64 A, i64 gamma, i64 x_star) {
  const auto sums = realizable_hole_sums(A, gamma, x_star);
  i64 d = A;
  while (std::binary_search(sums.begin(), sums.end(), d + gamma)) d += gamma;
  return d;
}

i64 johnson_bound(i64 v, i64 k) {
  if (k < 2 || v < k) throw PreconditionError("johnson_bound: need v >= k >= 2");
  return (v * ((v - 1) / (k - 1))) / k;
}

i64 schonheim_bound(i64 v, i64 k) {
  if (k < 2 || v < k) throw PreconditionError("schonheim_bound: need v >= k >= 2");
  const i64 inner = (v - 1 + k - 2) / (k - 1);
  return (v * inner + k - 1) / k;
}

}  // namespace ipbd
