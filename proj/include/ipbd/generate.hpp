// Direct generators. Every returned object has passed its verifier.
//
// Fields of prime order use modular arithmetic; the prime powers 4, 8, 9,
// 16, 25 and 27 are served from the tabulated MOLS in the catalog.
#pragma once

#include "ipbd/model.hpp"

namespace ipbd {

/// Number of MOLS of order q available here: q-1 for primes and tabulated
/// prime powers, 0 otherwise.
int mols_available(int q);

/// t MOLS of order q, L_a(i, j) = a i + j. Throws PreconditionError when
/// q is unavailable or t > q-1.
LatinSquareSet mols(int q, int t);

/// t MOLS of order q with L(i, i) = i, obtained from t+1 MOLS by moving a
/// symbol class of the first square onto the diagonal and relabeling.
/// Requires t <= q-2.
LatinSquareSet idempotent_mols(int q, int t);

/// TD(k, q) from k-2 MOLS: point g q + x is symbol x of group g. Orders
/// without a field still give TD(2, q) and TD(3, q) from a cyclic square.
Design transversal_design(int k, int q);

/// TD(k, q) resolved into q parallel classes, from k-1 MOLS (k <= q).
Design resolvable_transversal_design(int k, int q);

/// AG(2, q): point x q + y; rows, columns and the q-1 symbol classes of
/// the MOLS give q+1 parallel classes.
Design affine_plane(int q);

/// PG(2, q): the affine plane with one point at infinity per parallel
/// class and the line at infinity.
Design projective_plane(int q);

/// Resolvable PBD(n, {2}) for even n: the round-robin 1-factorization of
/// K_n with n-1 parallel classes.
Design one_factorization(int n);

/// STS(v): Bose for v = 3 mod 6, Skolem for v = 1 mod 6.
Design steiner_triple(int v);

}  // namespace ipbd
