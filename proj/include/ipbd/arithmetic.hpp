// Admissibility arithmetic, the alpha* lattice invariant, the congruence
// planner for GDD(alpha^n (alpha s)^1) residues, hole-sum arithmetic and
// the Johnson bound. All results are exact integer computations.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipbd/model.hpp"

namespace ipbd {

using i64 = std::int64_t;

/// Outcome of an admissibility predicate. `condition` names the first
/// failed condition ("local", "global", "hole-bound", ...), empty on success.
struct Admissibility {
  bool holds = true;
  std::string condition;
  std::string reason;

  explicit operator bool() const { return holds; }
  static Admissibility ok();
  static Admissibility fail(std::string condition, std::string reason);
};

BlockSizeSet derive_params(const std::vector<int>& sizes);

/// v-1 = 0 mod alpha and v(v-1) = 0 mod beta.
Admissibility admissible_pbd(i64 v, const BlockSizeSet& K);

/// v-1 = w-1 = 0 mod alpha, v(v-1) - w(w-1) = 0 mod beta and, for w >= 2,
/// v >= (k_min - 1) w + 1. Rejects w = v.
Admissibility admissible_ipbd(i64 v, i64 w, const BlockSizeSet& K);

/// The index-lambda analogue; lambda = 0 always holds. The hole bound is
/// the lambda-free one and is applied for lambda >= 1.
Admissibility admissible_ipbd_lambda(i64 v, i64 w, const BlockSizeSet& K, i64 lambda);

/// g(u-1) = 0 mod alpha and g^2 u(u-1) = 0 mod beta.
Admissibility admissible_gdd_uniform(i64 g, i64 u, const BlockSizeSet& K);

/// Type g^n h^1: gn = h-g = 0 mod alpha, gn(g(n-1)+2h) = 0 mod beta and
/// g(n-1) >= (k_min-2) h.
Admissibility admissible_gdd_gnh1(i64 g, i64 n, i64 h, const BlockSizeSet& K);

/// IGDD((g;h)^u): g(u-1) = h(u-1) = 0 mod alpha, (g^2-h^2)u(u-1) = 0 mod
/// beta and g >= (k_min-1) h.
Admissibility admissible_igdd(i64 g, i64 h, i64 u, const BlockSizeSet& K);

/// Resolvable GDD(g^u, {k}): gu = 0 mod k and g(u-1) = 0 mod k-1.
Admissibility admissible_rgdd(i64 g, i64 u, i64 k);

/// Least a > 0 with a(1, n/2m) in the integer span of the (d_i, 1).
/// Throws PreconditionError when the degree sum is not 2m or m <= 0.
i64 alpha_star(const std::vector<i64>& degrees, i64 n_edges);

/// Residues modulo M1 selecting IGDD((g;h)^u) and filler parameters that
/// yield GDD(alpha^n (alpha s)^1) with n = n0, s = s0 mod M1.
struct CongruencePlan {
  i64 M1 = 0;
  i64 n0 = 0;
  i64 s0 = 0;
  i64 alpha = 0;
  i64 gamma = 0;
  i64 u = 0;
  i64 h = 0;
  i64 x = 0;
  i64 y = 0;
  i64 g = 0;
  std::vector<std::pair<i64, int>> prime_powers;  // (p, t) with p^t || M1
};

class PlanInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n0(alpha(n0-1) + 2 alpha s0) = 0 mod gamma, the residue form of the
/// global condition for GDD(alpha^n0 (alpha s0)^1).
bool admissible_residue_pair(i64 n0, i64 s0, i64 M1, i64 alpha, i64 gamma);

/// Throws PreconditionError unless gamma | M1, PlanInfeasible when the
/// residue pair is inadmissible or an inverse does not exist.
CongruencePlan crt_plan(i64 n0, i64 s0, i64 M1, i64 alpha, i64 gamma);

/// Recomputes every identity of the plan; empty string when all hold,
/// otherwise the name of the first failing identity.
std::string check_plan(const CongruencePlan& plan);

/// All sums of A terms drawn from {1, 1+gamma, x_star}, ascending.
std::vector<i64> realizable_hole_sums(i64 A, i64 gamma, i64 x_star);

/// Largest D with {A, A+gamma, ..., D} contained in the realizable sums.
i64 hole_sum_progression_end(i64 A, i64 gamma, i64 x_star);

/// floor((v/k) floor((v-1)/(k-1))).
i64 johnson_bound(i64 v, i64 k);

/// Schonheim lower bound ceil((v/k) ceil((v-1)/(k-1))) for coverings.
i64 schonheim_bound(i64 v, i64 k);

// Modular helpers shared by the planner and the generators.
i64 mod(i64 a, i64 m);
std::optional<i64> mod_inverse(i64 a, i64 m);
std::vector<std::pair<i64, int>> factorize(i64 n);
bool is_prime(i64 n);

}  // namespace ipbd
