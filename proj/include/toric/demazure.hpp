#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/integer.hpp"

namespace toric {

/// e in M with <v_t, e> = -1 on the distinguished ray t and >= 0 on the others.
struct DemazureRoot {
  IntVector e;
  std::size_t distinguished_ray = 0;
  friend bool operator==(const DemazureRoot&, const DemazureRoot&) = default;
};

bool is_demazure_root(const Cone& c, const DemazureRoot& r);

/// 10 times the largest absolute ray coordinate.
Integer default_box_bound(const Cone& c);

/// All roots with coordinates in [-box_bound, box_bound], grouped by
/// distinguished ray, lexicographic within a group.
std::vector<DemazureRoot> enumerate_roots(const Cone& c, const Integer& box_bound);

struct ConnectionVerdict {
  enum class Status { Yes, No, Inconclusive };
  enum class Certificate { None, Combinatorial, IntegralEqualities, Rational };

  Status status = Status::Inconclusive;
  Certificate certificate = Certificate::None;
  std::optional<DemazureRoot> witness;
  /// Box bound of the lattice search, for Yes and Inconclusive.
  Integer bound;
  std::string reason;

  /// Checks the witness against the pair; throws TheoryViolation if it fails.
  static ConnectionVerdict yes(const Cone& c, const Face& f1, const Face& f2, DemazureRoot witness,
                               const Integer& bound);
  static ConnectionVerdict no(Certificate kind, std::string reason);
  static ConnectionVerdict inconclusive(const Integer& bound);

  bool conclusive() const { return status != Status::Inconclusive; }
};

/// Whether some root subgroup joins the orbits of f1 and f2 (f1 a facet of f2).
/// Throws InputError if either face does not belong to c.
ConnectionVerdict connection_exists(const Cone& c, const Face& f1, const Face& f2, const Integer& box_bound);

struct ConnectionGraph {
  struct Candidate {
    /// Positions in `faces`; faces[to] has exactly one more ray than faces[from].
    std::size_t from = 0;
    std::size_t to = 0;
    ConnectionVerdict verdict;
  };
  std::vector<Face> faces;
  std::vector<Candidate> candidates;
  Integer box_bound;
};

ConnectionGraph connection_graph(const Cone& c, const Integer& box_bound);

/// Component index per face, over Yes edges only; components numbered by first face.
std::vector<std::size_t> connected_components(const ConnectionGraph& g);

struct IsolatedFace {
  Face face;
  /// Every incident candidate pair is a certified No.
  bool fully_certified = false;
};

/// Faces with no incident Yes edge, in face order.
std::vector<IsolatedFace> isolated_faces(const ConnectionGraph& g);

const char* to_string(ConnectionVerdict::Status s);
const char* to_string(ConnectionVerdict::Certificate c);

}  // namespace toric
