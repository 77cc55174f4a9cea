#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "toric/abelian.hpp"
#include "toric/cone.hpp"
#include "toric/toric.hpp"

namespace toric {

/// Characters chi_1..chi_m of a quasitorus with character group K, one per
/// coordinate of the affine space it acts on.
struct WeightSystem {
  FgAbGroup group;
  std::vector<GroupElement> weights;

  /// Every weight belongs to the group; throws InputError otherwise.
  void validate() const;
};

/// Coordinate positions with nonzero entries, sorted.
struct Support {
  std::vector<std::size_t> indices;
  friend bool operator==(const Support&, const Support&) = default;
  friend auto operator<=>(const Support&, const Support&) = default;
};

struct LunaStratum {
  /// <chi_S>; the stabilizer's character group is K / <chi_S>.
  SubgroupHandle subgroup;
  std::vector<Support> supports;
  std::size_t dim = 0;
};

inline constexpr std::size_t kMaxLunaWeights = 20;

/// K = Cl(X), chi_i = [D_i] in ray order.
WeightSystem cox_weight_system(const ToricData& t);

/// The rational cone of the weights in s is a linear subspace.
bool is_closed_support(const WeightSystem& w, const Support& s);

SubgroupHandle stabilizer_subgroup(const WeightSystem& w, const Support& s);

/// All closed supports grouped by <chi_S>, sorted by descending dimension
/// and then by subgroup basis. Refuses more than kMaxLunaWeights weights.
std::vector<LunaStratum> luna_strata(const WeightSystem& w);

struct StabilityVerdict {
  bool stable = false;
  /// Bad supports among the full support and the supports of size m - 1.
  std::vector<Support> offending;
};

/// Good support: closed and <chi_S> = K.
StabilityVerdict check_strongly_stable(const WeightSystem& w);

struct GaleDual {
  /// Hermite basis of M = ker(Z^m -> K), one row per basis vector.
  IntegerMatrix kernel_basis;
  /// Rays: the coordinate functionals restricted to M, in that basis.
  Cone cone;
};

/// Throws InputError unless w is strongly stable.
GaleDual gale_dual(const WeightSystem& w);

struct BridgeEntry {
  Face face;
  Support support;
};

/// Checks that face -> complement of its rays lands on closed supports,
/// injectively, onto all closed supports, with stabilizer equal to G(O).
/// Any failure throws TheoryViolation.
std::vector<BridgeEntry> face_support_bridge(const ToricData& t);

}  // namespace toric
