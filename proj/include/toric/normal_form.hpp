#pragma once

#include <cstddef>
#include <vector>

#include "toric/matrix.hpp"

namespace toric {

/// U * A * V == S with U, V unimodular and S diagonal, d1 | d2 | ... , all d_i >= 0.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;

  /// Nonzero diagonal entries of S, in order.
  std::vector<Integer> invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

SmithForm smith_normal_form(const IntegerMatrix& a);

/// Row-style Hermite normal form: U * A == H.
///
/// Conventions: each nonzero row's leading entry (pivot) is positive and lies
/// strictly to the right of the pivot above it; entries above a pivot are
/// reduced into [0, pivot); zero rows come last. The nonzero rows of H are the
/// canonical basis of the row lattice of A.
struct HermiteForm {
  IntegerMatrix H;
  IntegerMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;

  /// The first `rank` rows of H.
  IntegerMatrix basis() const;
};

HermiteForm hermite_normal_form(const IntegerMatrix& a);

/// Rank over the rationals.
std::size_t rank_of(const IntegerMatrix& a);

}  // namespace toric
