#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toric/integer.hpp"
#include "toric/matrix.hpp"

namespace toric {

/// An element, as coordinates relative to its group's presentation: free
/// coordinates first, then one coordinate per invariant factor.
struct GroupElement {
  IntVector coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Z^r + Z/d_1 + ... + Z/d_t with d_i >= 2 and d_i | d_{i+1}.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t coord_count() const { return free_rank_ + torsion_.size(); }
  bool is_trivial() const { return coord_count() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Order of a finite group; nullopt when the free rank is positive.
  std::optional<Integer> order() const;
  /// Largest invariant factor (1 for a torsion-free group).
  Integer exponent() const;

  /// Validated element; torsion coordinates must already be reduced.
  GroupElement element(IntVector coords) const;
  /// Element with torsion coordinates reduced into [0, d_i).
  GroupElement reduce(IntVector coords) const;
  GroupElement zero() const { return GroupElement{IntVector(coord_count())}; }
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, const Integer& k) const;
  bool contains(const GroupElement& a) const;
  /// Order of a torsion element; nullopt if the element has infinite order.
  std::optional<Integer> element_order(const GroupElement& a) const;

  /// "0", "Z^2", "Z/4", "Z + Z/2 + Z/2", ...
  std::string describe() const;
  std::string describe(const GroupElement& a) const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Subgroup stored as the Hermite basis of its preimage lattice in Z^(r+t),
/// relation vectors d_i * e_(r+i) included. Equal subgroups have identical bases.
class SubgroupHandle {
 public:
  SubgroupHandle(FgAbGroup parent, IntegerMatrix canonical_basis)
      : parent_(std::move(parent)), basis_(std::move(canonical_basis)) {}

  const FgAbGroup& parent() const { return parent_; }
  const IntegerMatrix& canonical_basis() const { return basis_; }
  /// Generators as reduced group elements, relation rows and zeros dropped.
  std::vector<GroupElement> generators() const;
  /// "<g1, g2>" in the parent's coordinates.
  std::string describe() const;

  friend bool operator==(const SubgroupHandle&, const SubgroupHandle&) = default;

 private:
  FgAbGroup parent_;
  IntegerMatrix basis_;
};

struct Cokernel {
  FgAbGroup group;
  /// Images of the standard basis vectors of Z^m.
  std::vector<GroupElement> images;
};

/// Z^m / (column span of A) for an m x n matrix A.
Cokernel group_from_cokernel(const IntegerMatrix& a);

SubgroupHandle subgroup_canon(const FgAbGroup& g, const std::vector<GroupElement>& gens);
/// Throws InputError when the parents differ.
bool subgroups_equal(const SubgroupHandle& a, const SubgroupHandle& b);
bool subgroup_leq(const SubgroupHandle& a, const SubgroupHandle& b);
FgAbGroup quotient_group(const FgAbGroup& g, const SubgroupHandle& s);
/// Isomorphism type of the subgroup itself.
FgAbGroup subgroup_structure(const SubgroupHandle& s);

struct SemigroupVerdict {
  enum class Kind { Yes, No, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Nonnegative coefficients, one per generator, when kind == Yes.
  IntVector coefficients;
  /// Largest per-generator coefficient searched when kind == Inconclusive.
  Integer searched_bound;
};

inline constexpr long kDefaultCoeffBound = 16;

/// Is `target` a nonnegative integer combination of `gens`?
///
/// Generators lying in a nonnegative relation with positive coefficient
/// generate a group, so that part is decided exactly. The rest is pinned by a
/// functional positive on it; when its coefficients would have to exceed
/// `coeff_bound` the search is cut there and may end Inconclusive.
SemigroupVerdict semigroup_member(const FgAbGroup& g, const std::vector<GroupElement>& gens,
                                  const GroupElement& target, const Integer& coeff_bound = kDefaultCoeffBound);

/// Rank of the free parts of `gens` as rational vectors.
std::size_t rank_over_rationals(const FgAbGroup& g, const std::vector<GroupElement>& gens);

}  // namespace toric
