#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "toric/integer.hpp"
#include "toric/matrix.hpp"

namespace toric {

/// A pointed rational polyhedral cone in Z^n, given by its primitive
/// extremal rays in input order. Only build_cone and split_degenerate make a
/// nonzero one.
class Cone {
 public:
  /// The zero cone in Z^0 (torus case).
  Cone() = default;
  std::size_t ambient_rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  std::size_t ray_count() const { return rays_.size(); }
  /// One row per ray.
  IntegerMatrix ray_matrix() const { return IntegerMatrix::from_rows(rays_, rank_); }
  std::size_t dimension() const;
  bool is_full_dimensional() const { return dimension() == rank_; }

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  Cone(std::size_t rank, std::vector<IntVector> rays) : rank_(rank), rays_(std::move(rays)) {}
  friend Cone build_cone(std::size_t, std::vector<IntVector>, bool);
  friend struct DegenerateSplit split_degenerate(std::size_t, const std::vector<IntVector>&, bool);

  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
};

/// A face, identified by the sorted positions of its rays. The apex has no rays.
struct Face {
  std::vector<std::size_t> rays;
  std::size_t dim = 0;

  friend bool operator==(const Face&, const Face&) = default;
  /// Orders by dimension, then by ray set.
  friend std::strong_ordering operator<=>(const Face& a, const Face& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    return a.rays <=> b.rays;
  }
};

/// Validates raw rays: nonzero, primitive (divided out when `normalize`),
/// distinct, pointed, every ray extremal. Throws InputError otherwise.
Cone build_cone(std::size_t rank, std::vector<IntVector> raw_rays, bool normalize = false);

/// Primitive inner facet normals, sorted. Requires a full-dimensional cone.
std::vector<IntVector> facet_normals(const Cone& c);

/// Every face from the apex to the cone itself, sorted by (dim, rays).
std::vector<Face> face_lattice(const Cone& c);

/// The face with exactly these rays; throws InputError if the set is not a face.
Face make_face(const Cone& c, std::vector<std::size_t> rays);

/// a is a face of b.
bool is_subface(const Face& a, const Face& b);

/// Rays of the face extend to a basis of Z^n.
bool is_smooth_face(const Cone& c, const Face& f);

struct DegenerateSplit {
  /// Rows form a Hermite basis of the saturated span of the rays.
  IntegerMatrix sublattice_basis;
  /// The rays in those coordinates; full-dimensional.
  Cone induced;
  std::size_t torus_rank = 0;
};

/// Writes X = X0 x torus. Full-dimensional input gives the identity split;
/// an empty ray list gives a rank-0 cone and torus_rank = rank.
DegenerateSplit split_degenerate(std::size_t rank, const std::vector<IntVector>& raw_rays, bool normalize = false);

/// Inverse of the coordinate change in a split: rays back in Z^n.
std::vector<IntVector> embed_rays(const DegenerateSplit& s);

}  // namespace toric
