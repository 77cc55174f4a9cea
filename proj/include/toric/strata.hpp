#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/abelian.hpp"
#include "toric/cone.hpp"
#include "toric/demazure.hpp"
#include "toric/toric.hpp"

namespace toric {

struct StratifyOptions {
  /// Root search box; defaults to default_box_bound of the (split) cone.
  std::optional<Integer> box_bound;
  Integer coeff_bound = kDefaultCoeffBound;
  bool strict = false;
  bool normalize = false;
};

struct FaceRecord {
  /// orbit_dim here includes the torus factor.
  FaceOrbitData data;
  SemigroupCheck semigroup;
  std::size_t stratum = 0;
};

struct Stratum {
  SubgroupHandle subgroup;
  /// Positions in StratificationReport::faces.
  std::vector<std::size_t> faces;
  /// Includes the torus factor.
  std::size_t dim = 0;
  bool smooth = false;
  bool principal = false;
};

/// s <= t when subgroup(s) is contained in subgroup(t); covering pairs only.
struct ClosureEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;
  friend bool operator==(const ClosureEdge&, const ClosureEdge&) = default;
};

struct CrossChecks {
  /// G(O) partition equals the Luna partition through the bridge.
  bool luna_agrees = false;
  bool bridge_verified = false;
  bool principal_is_smooth_locus = false;
  /// "confirmed", "consistent" or "refines".
  std::string connections;
  std::size_t connection_pairs = 0;
  std::size_t connection_inconclusive = 0;
  std::size_t semigroup_verified = 0;
  std::size_t semigroup_inconclusive = 0;
};

struct StratificationReport {
  std::size_t input_rank = 0;
  std::vector<IntVector> input_rays;
  StratifyOptions options;
  Integer box_bound;

  std::size_t torus_rank = 0;
  IntegerMatrix sublattice_basis;
  Cone cone;
  FgAbGroup class_group;
  std::vector<GroupElement> divisor_classes;

  std::vector<FaceRecord> faces;
  std::vector<Stratum> strata;
  std::vector<ClosureEdge> closure;
  ConnectionGraph connections;
  CrossChecks checks;
  std::vector<std::string> warnings;

  /// Warnings exist and strict mode was requested.
  bool strict_failure() const { return options.strict && !warnings.empty(); }
};

/// Runs the three routes (G(O) classes, Luna strata of the Cox weights, root
/// connections) and cross-checks them. Input errors throw InputError; any
/// disagreement the theory rules out throws TheoryViolation.
StratificationReport stratify(std::size_t rank, const std::vector<IntVector>& raw_rays,
                              const StratifyOptions& options = {});

/// Transitive reduction of subgroup containment between strata.
std::vector<ClosureEdge> closure_order(const std::vector<Stratum>& strata);

}  // namespace toric
