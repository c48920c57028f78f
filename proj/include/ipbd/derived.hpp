// Applications: incomplete MOLS from IPBD templates, and packings and
// coverings assembled from GDD templates.
#pragma once

#include <string>
#include <vector>

#include "ipbd/compose.hpp"
#include "ipbd/model.hpp"
#include "ipbd/resolve.hpp"
#include "ipbd/verify.hpp"

namespace ipbd {

/// t incomplete MOLS of side n with hole m from an IPBD((n;m), K) (or a
/// PBD, m <= 1). Template points index rows, columns and symbols; each
/// block B = {b_0 < ... < b_{k-1}} carries t idempotent MOLS M_s of order k
/// via L_s(b_i, b_j) = b_{M_s(i, j)}, and L_s(x, x) = x off the hole.
/// Throws PreconditionError when a block size lacks t idempotent MOLS.
LatinSquareSet imols_from_ipbd(const Design& template_design, int t);

enum class GroupFill { leave, fill };

/// Template GDD(g^n h^1) (or IPBD, read as 1^(v-w) w^1): the last group of a
/// non-uniform or single-group template is the hole and always receives
/// the best known (h, k, 1)-packing; the other groups are left as K_g
/// components of the leave or, with GroupFill::fill, get a packing too.
struct PackingRecipe {
  int v = 0;
  int k = 3;
  IngredientRequest template_request;
  GroupFill group_fill = GroupFill::leave;
  [[nodiscard]] std::string describe() const;
};

/// Template as above; every group receives a (g, k, 1)-covering, and a
/// group smaller than k is covered by one block padded with the least
/// points outside it.
struct CoveringRecipe {
  int v = 0;
  int k = 3;
  IngredientRequest template_request;
  [[nodiscard]] std::string describe() const;
};

struct PackingOutcome {
  Design design;
  PackingStats stats;
  std::string recipe;
};

struct CoveringOutcome {
  Design design;
  CoveringStats stats;
  std::string recipe;
};

/// Candidate recipes in order of preference.
std::vector<PackingRecipe> packing_recipes(int v, int k);
std::vector<CoveringRecipe> covering_recipes(int v, int k);

/// Assembles and verifies; throws IngredientError naming a missing
/// ingredient.
PackingOutcome packing_from_template(const PackingRecipe& recipe, Resolver& resolver);
CoveringOutcome covering_from_template(const CoveringRecipe& recipe, Resolver& resolver);

/// The first candidate recipe that succeeds.
PackingOutcome best_packing(int v, int k, Resolver& resolver);
CoveringOutcome best_covering(int v, int k, Resolver& resolver);

}  // namespace ipbd
