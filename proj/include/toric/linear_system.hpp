#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "toric/integer.hpp"

namespace toric {

/// coeffs . x == rhs
struct Equality {
  IntVector coeffs;
  Integer rhs;
};

/// coeffs . x >= rhs, or coeffs . x > rhs when strict.
struct Inequality {
  IntVector coeffs;
  Rational rhs;
  bool strict = false;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<Equality> equalities;
  std::vector<Inequality> inequalities;

  /// Throws InputError unless every coefficient vector has length num_vars.
  void validate() const;
  bool satisfied_by(std::span<const Rational> x) const;
  bool satisfied_by(std::span<const Integer> x) const;
};

/// Integer solutions of the equality part: particular + lattice spanned by kernel_basis.
///
/// kernel_basis is in Hermite normal form and the particular solution is
/// reduced against it (pivot coordinates in [0, pivot)), so both are
/// canonical for a given system.
struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel_basis;
};

std::optional<IntegerSolution> solve_integer_system(std::size_t num_vars, const std::vector<Equality>& equalities);
std::optional<IntegerSolution> solve_integer_system(const LinearSystem& sys);

/// Exact feasibility over the rationals (Fourier-Motzkin). Returns a witness
/// point when feasible. Intended for about ten variables and forty constraints.
std::optional<RatVector> rational_feasible(const LinearSystem& sys);

/// All integer solutions with every coordinate in [-box_bound, box_bound],
/// in lexicographic order.
std::vector<IntVector> lattice_points_bounded(const LinearSystem& sys, const Integer& box_bound);

/// Streams the same points as lattice_points_bounded, in the same order,
/// until `visit` returns false.
void for_each_lattice_point(const LinearSystem& sys, const Integer& box_bound,
                            const std::function<bool(const IntVector&)>& visit);

/// Lexicographically smallest solution inside the box, if any.
std::optional<IntVector> first_lattice_point(const LinearSystem& sys, const Integer& box_bound);

}  // namespace toric
