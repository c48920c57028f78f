// Recursive constructions as verified operators.
//
// Every operator is pure given its inputs and ingredient source, returns a
// normalized design and certifies it with verify_design before returning.
// Ingredients are requested through an IngredientSource, which either
// returns a valid design of the requested shape or throws IngredientError.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipbd/arithmetic.hpp"
#include "ipbd/model.hpp"

namespace ipbd {

enum class RequestType { pbd, ipbd, gdd, igdd, hgdd, packing, covering };

/// A concrete ingredient shape. Only the fields of the given type matter:
///   pbd       PBD_lambda(v, K)
///   ipbd      IPBD_lambda((v; w), K)
///   gdd       GDD(groups, K), group sizes in any order, zeros ignored
///   igdd      IGDD((g; h)^u, K)
///   hgdd      HGDD(u x h^m, K)
///   packing   (v, k, 1)-packing with k = K.k_min(), as many blocks as known
///   covering  (v, k, 1)-covering with k = K.k_min(), as few blocks as known
struct IngredientRequest {
  RequestType type = RequestType::pbd;
  int v = 0;
  int w = 0;
  std::vector<int> groups;
  int g = 0;
  int h = 0;
  int u = 0;
  int m = 0;
  int lambda = 1;
  BlockSizeSet K;
  std::string note;

  static IngredientRequest pbd(int v, const BlockSizeSet& K, int lambda = 1);
  static IngredientRequest ipbd(int v, int w, const BlockSizeSet& K, int lambda = 1);
  static IngredientRequest gdd(std::vector<int> groups, const BlockSizeSet& K);
  static IngredientRequest igdd(int g, int h, int u, const BlockSizeSet& K);
  static IngredientRequest hgdd(int u, int h, int m, const BlockSizeSet& K);
  static IngredientRequest packing(int v, int k);
  static IngredientRequest covering(int v, int k);

  /// Canonical text such as "GDD(2^3,{3})" or "IPBD((13;4),{4})"; equal
  /// shapes give equal text, so it doubles as a memo key.
  [[nodiscard]] std::string describe() const;
  /// Number of points of a design of this shape.
  [[nodiscard]] int point_count() const;
  /// True when `design` has this shape (kind, type, lambda, sizes in K).
  [[nodiscard]] bool matches(const Design& design) const;
};

/// The matching admissible_* predicate. GDD requests of arbitrary type use
/// the local and global congruences for the given multiset of group sizes.
Admissibility admissible(const IngredientRequest& request);

/// An ingredient could not be supplied. `request` names the failed shape.
class IngredientError : public std::runtime_error {
 public:
  IngredientError(const std::string& request, const std::string& why)
      : std::runtime_error(request + ": " + why), request_(request) {}
  [[nodiscard]] const std::string& request() const { return request_; }

 private:
  std::string request_;
};

using IngredientSource = std::function<Design(const IngredientRequest&)>;

/// Per-point weights of a master design.
using WeightAssignment = std::vector<int>;

/// The group partition of a GDD-like design: singletons for a PBD, the
/// singletons plus the hole for an IPBD, the groups otherwise.
Partition groups_of(const Design& design);

/// Fundamental construction: point x becomes w(x) points and every master
/// block B is replaced by GDD([w(x) : x in B], K). The output groups are the
/// expanded master groups; groups of total weight zero disappear.
Design wfc(const Design& master, const WeightAssignment& weights, const BlockSizeSet& K,
           const IngredientSource& source);

/// Replaces every block whose size is outside K by a PBD(size, K) on its
/// points. The kind is kept; a declared resolution is dropped.
Design break_blocks(const Design& design, const BlockSizeSet& K, const IngredientSource& source);

/// Places `inner` (a PBD or IPBD on w points) on the hole of `outer`. The
/// result is a PBD, or an IPBD with the image of the inner hole. Inner block
/// sizes must lie in the outer K, except that a single block on the whole
/// hole is accepted and adds w to K (tagged in the provenance).
Design fill_hole(const Design& outer, const Design& inner);

/// IGDD((g;h)^u, K) + IPBD((x;y), K) with g-h = x-y and y >= h gives
/// IPBD((v;w), K) with v-w = u(x-y) and w = (u-1)h + y. The y-h new points
/// are shared by all groups. A GDD(g^u) counts as h = 0.
Design igdd_fill(const Design& igdd, const Design& filler);

/// IGDD((g;h)^u, K) + GDD(alpha^x (alpha y)^1, K) with g-h = alpha x and
/// h <= alpha y gives GDD(alpha^n w^1, K) with n = ux and
/// w = h(u-1) + alpha y. The filler's last group receives the hole.
Design igdd_fill_gdd(const Design& igdd, const Design& filler, int alpha);

/// One new point per parallel class, appended to every block of the class.
/// Extends the first `classes` classes (all by default); unextended classes
/// keep their blocks. A PBD becomes an IPBD whose hole is the new points, a
/// GDD or TD gains the new points as an extra group.
Design projective_extend(const Design& resolvable,
                         std::optional<std::size_t> classes = std::nullopt);

/// Adds `extra` new points and fills every group but the last with
/// IPBD((|G| + extra; extra), K), whose hole goes to the new points. The
/// result is an IPBD whose hole is the last group plus the new points.
Design fill_groups_with_ipbds(const Design& gdd, int extra, const BlockSizeSet& K,
                              const IngredientSource& source);

/// TD(t+2, A): keep the first `keep` points of the second last group,
/// weight every other point outside the last group by alpha and the last
/// group by `last_weights`, then apply wfc. The result has type
/// (alpha A)^t (alpha keep)^1 C^1 with C the sum of `last_weights`.
Design truncate_weight_td(const Design& td, int keep, const std::vector<int>& last_weights,
                          int alpha, const BlockSizeSet& K, const IngredientSource& source);

/// Blows every point of IPBD((n+s;s), M) up into g points, replacing each
/// block of size m by GDD(g^m, K): the result is GDD(g^n (gs)^1, K).
Design inflate(const Design& ipbd, int g, const BlockSizeSet& K, const IngredientSource& source);

/// HGDD(u x h^v, K) + GDD(h^v a^1, K) on every row plus a common new points
/// gives GDD((hu)^v a^1, K); a = 0 drops the last group.
Design fill_hgdd(const Design& hgdd, const Design& filler);

/// Replaces each block of size s of an IPBD((v;w), L) by PBD_lambda(s, K),
/// giving IPBD_lambda((v;w), K).
Design expand_index(const Design& ipbd, int lambda, const BlockSizeSet& K,
                    const IngredientSource& source);

}  // namespace ipbd
