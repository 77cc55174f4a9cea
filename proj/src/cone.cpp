#include "toric/cone.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "toric/errors.hpp"
#include "toric/linear_system.hpp"
#include "toric/normal_form.hpp"

namespace toric {

std::size_t Cone::dimension() const { return rays_.empty() ? 0 : rank_of(ray_matrix()); }

namespace {

// sum_i x_i * vecs[i] == target, one equality per coordinate.
std::vector<Equality> combination_equalities(const std::vector<IntVector>& vecs, std::size_t rank,
                                             const IntVector& target) {
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < rank; ++j) {
    IntVector c(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) c[i] = vecs[i][j];
    eqs.push_back({c, target[j]});
  }
  return eqs;
}

std::vector<Inequality> nonnegative(std::size_t n) {
  std::vector<Inequality> out;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    out.push_back({e, 0});
  }
  return out;
}

std::string combination_text(const std::vector<IntVector>& vecs, const RatVector& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += coeffs[i].get_str() + "*" + to_string(vecs[i]);
  }
  return out;
}

void check_pointed(std::size_t rank, const std::vector<IntVector>& rays) {
  LinearSystem sys{rays.size(), combination_equalities(rays, rank, IntVector(rank)), nonnegative(rays.size())};
  sys.equalities.push_back({IntVector(rays.size(), 1), 1});
  if (auto w = rational_feasible(sys))
    throw InputError("cone is not pointed: 0 = " + combination_text(rays, *w) +
                     "; cones with a lineality space are not supported, pass only the pointed part after splitting off "
                     "the torus factor");
}

void check_extremal(std::size_t rank, const std::vector<IntVector>& rays) {
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (j != i) others.push_back(rays[j]);
    LinearSystem sys{others.size(), combination_equalities(others, rank, rays[i]), nonnegative(others.size())};
    if (auto w = rational_feasible(sys))
      throw InputError("ray " + to_string(rays[i]) + " is not extremal: " + to_string(rays[i]) + " = " +
                       combination_text(others, *w));
  }
}

// Integer kernel of the map x -> (r . x) over the given rows.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
  std::vector<Equality> eqs;
  for (const auto& r : rows) eqs.push_back({r, 0});
  return solve_integer_system(n, eqs)->kernel_basis;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

std::size_t face_dim(const Cone& c, const std::vector<std::size_t>& rays) {
  if (rays.empty()) return 0;
  return rank_of(c.ray_matrix().select_rows(rays));
}

// Facet-normal pairing data for any pointed cone; degenerate cones are split first.
std::vector<IntVector> normals_in_own_span(const Cone& c, std::vector<IntVector>& rays_out) {
  if (c.is_full_dimensional()) {
    rays_out = c.rays();
    return facet_normals(c);
  }
  DegenerateSplit s = split_degenerate(c.ambient_rank(), c.rays());
  rays_out = s.induced.rays();
  return facet_normals(s.induced);
}

}  // namespace

Cone build_cone(std::size_t rank, std::vector<IntVector> raw_rays, bool normalize) {
  if (raw_rays.empty()) throw InputError("cone has no rays; the torus case is handled separately");
  for (std::size_t i = 0; i < raw_rays.size(); ++i) {
    IntVector& v = raw_rays[i];
    if (v.size() != rank)
      throw InputError("ray " + to_string(v) + " has length " + std::to_string(v.size()) + ", expected " +
                       std::to_string(rank));
    if (is_zero(v)) throw InputError("ray " + std::to_string(i + 1) + " is the zero vector");
    if (gcd_of(v) != 1) {
      IntVector p = primitive(v);
      if (!normalize)
        throw InputError("ray " + to_string(v) + " is not primitive; use " + to_string(p) + " (or --normalize)");
      v = std::move(p);
    }
  }
  for (std::size_t i = 0; i < raw_rays.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (raw_rays[i] == raw_rays[j])
        throw InputError("duplicate ray " + to_string(raw_rays[i]) + " at positions " + std::to_string(j + 1) +
                         " and " + std::to_string(i + 1));
  check_pointed(rank, raw_rays);
  check_extremal(rank, raw_rays);
  return Cone(rank, std::move(raw_rays));
}

std::vector<IntVector> facet_normals(const Cone& c) {
  const std::size_t n = c.ambient_rank();
  if (!c.is_full_dimensional())
    throw InputError("facet normals need a full-dimensional cone; split off the torus factor first");
  if (n == 0) return {};
  std::set<IntVector> found;
  std::vector<std::size_t> pick(n - 1);
  // brute force over (n-1)-subsets of rays
  auto visit = [&]() {
    std::vector<IntVector> rows;
    for (auto i : pick) rows.push_back(c.rays()[i]);
    auto ker = integer_kernel(rows, n);
    if (ker.size() != 1) return;
    IntVector u = primitive(ker[0]);
    bool pos = false, neg = false;
    for (const auto& r : c.rays()) {
      Integer p = dot(r, u);
      pos |= p > 0;
      neg |= p < 0;
    }
    if (pos && neg) return;
    if (neg)
      for (auto& x : u) x = -x;
    found.insert(u);
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == pick.size()) {
      visit();
      return;
    }
    for (std::size_t i = start; i < c.ray_count(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return {found.begin(), found.end()};
}

std::vector<Face> face_lattice(const Cone& c) {
  std::vector<IntVector> rays;
  auto normals = normals_in_own_span(c, rays);
  std::set<std::vector<std::size_t>> seen{all_indices(c.ray_count())};
  std::deque<std::vector<std::size_t>> queue{all_indices(c.ray_count())};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& u : normals) {
      std::vector<std::size_t> next;
      for (auto i : cur)
        if (dot(rays[i], u) == 0) next.push_back(i);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<Face> out;
  for (const auto& s : seen) out.push_back(Face{s, face_dim(c, s)});
  std::sort(out.begin(), out.end());
  return out;
}

Face make_face(const Cone& c, std::vector<std::size_t> rays) {
  std::sort(rays.begin(), rays.end());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i] >= c.ray_count())
      throw InputError("ray index " + std::to_string(rays[i] + 1) + " out of range (cone has " +
                       std::to_string(c.ray_count()) + " rays)");
    if (i > 0 && rays[i] == rays[i - 1]) throw InputError("repeated ray index " + std::to_string(rays[i] + 1));
  }
  // The smallest face containing the set: rays tight on every facet that contains it.
  std::vector<IntVector> own;
  auto normals = normals_in_own_span(c, own);
  std::vector<std::size_t> closure = all_indices(c.ray_count());
  for (const auto& u : normals) {
    bool contains = std::all_of(rays.begin(), rays.end(), [&](std::size_t i) { return dot(own[i], u) == 0; });
    if (!contains) continue;
    std::vector<std::size_t> kept;
    for (auto i : closure)
      if (dot(own[i], u) == 0) kept.push_back(i);
    closure = std::move(kept);
  }
  if (closure != rays) {
    std::vector<std::size_t> shown;
    for (auto i : closure) shown.push_back(i + 1);
    std::string txt;
    for (auto i : shown) txt += (txt.empty() ? "" : ",") + std::to_string(i);
    throw InputError("ray set is not a face; the smallest face containing it has rays {" + txt + "}");
  }
  return Face{rays, face_dim(c, rays)};
}

bool is_subface(const Face& a, const Face& b) { return std::includes(b.rays.begin(), b.rays.end(), a.rays.begin(), a.rays.end()); }

bool is_smooth_face(const Cone& c, const Face& f) {
  if (f.rays.empty()) return true;
  if (f.rays.size() != f.dim) return false;
  auto factors = smith_normal_form(c.ray_matrix().select_rows(f.rays)).invariant_factors();
  return factors.size() == f.dim && std::all_of(factors.begin(), factors.end(), [](const Integer& d) { return d == 1; });
}

DegenerateSplit split_degenerate(std::size_t rank, const std::vector<IntVector>& raw_rays, bool normalize) {
  if (raw_rays.empty()) return DegenerateSplit{IntegerMatrix(0, rank), Cone(0, {}), rank};
  for (const auto& v : raw_rays)
    if (v.size() != rank)
      throw InputError("ray " + to_string(v) + " has length " + std::to_string(v.size()) + ", expected " +
                       std::to_string(rank));
  // Saturation: the annihilator of the annihilator of the rays.
  auto perp = integer_kernel(raw_rays, rank);
  auto sat = integer_kernel(perp, rank);
  IntegerMatrix basis = hermite_normal_form(IntegerMatrix::from_rows(sat, rank)).basis();
  const std::size_t d = basis.rows();

  std::vector<IntVector> coords;
  for (const auto& v : raw_rays) {
    std::vector<Equality> eqs;
    for (std::size_t j = 0; j < rank; ++j) eqs.push_back({basis.column(j), v[j]});
    auto sol = solve_integer_system(d, eqs);
    if (!sol || !sol->kernel_basis.empty()) throw TheoryViolation("ray outside its own saturated span");
    coords.push_back(sol->particular);
  }
  // Primitivity in the saturated sublattice matches primitivity in Z^n,
  // so validation messages stay meaningful.
  Cone induced = build_cone(d, std::move(coords), normalize);
  return DegenerateSplit{std::move(basis), std::move(induced), rank - d};
}

std::vector<IntVector> embed_rays(const DegenerateSplit& s) {
  std::vector<IntVector> out;
  const IntegerMatrix& b = s.sublattice_basis;
  for (const auto& r : s.induced.rays()) {
    IntVector v(b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) v[j] += r[i] * b(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace toric
