#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toric/abelian.hpp"
#include "toric/cone.hpp"

namespace toric {

/// Divisor-class data of the affine toric variety of a full-dimensional cone.
struct ToricData {
  Cone cone;
  FgAbGroup class_group;
  /// [D_i], one per ray, in ray order.
  std::vector<GroupElement> divisor_classes;
  std::vector<Face> faces;
};

struct FaceOrbitData {
  Face face;
  /// Rays whose divisors do not contain the orbit: the complement of the face.
  std::vector<std::size_t> dset;
  /// Subgroup generated by the classes over dset.
  SubgroupHandle g_subgroup;
  /// class_group / g_subgroup
  FgAbGroup local_class_group;
  std::size_t orbit_dim = 0;
  bool smooth = false;
};

/// Cl(X) as the cokernel of m -> (<v_i, m>)_i. Throws InputError for a
/// cone that is not full-dimensional.
ToricData build_toric(const Cone& c);

/// Throws InputError if f is not one of t.faces.
FaceOrbitData face_orbit_data(const ToricData& t, const Face& f);

struct SemigroupCheck {
  enum class Status { Verified, Inconclusive };
  Status status = Status::Verified;
  /// Rays in dset whose inverse class was not reached within the bound.
  std::vector<std::size_t> unresolved;
  std::string details;
};

/// Confirms -[D_i] lies in the semigroup of the classes over dset, for every
/// i in dset. A definite No contradicts the theory and throws TheoryViolation.
SemigroupCheck verify_semigroup_equals_group(const ToricData& t, const Face& f,
                                             const Integer& coeff_bound = kDefaultCoeffBound);

}  // namespace toric
