#include "toric/demazure.hpp"

#include <algorithm>
#include <numeric>

#include "toric/errors.hpp"
#include "toric/linear_system.hpp"

namespace toric {

bool is_demazure_root(const Cone& c, const DemazureRoot& r) {
  if (r.e.size() != c.ambient_rank() || r.distinguished_ray >= c.ray_count()) return false;
  for (std::size_t i = 0; i < c.ray_count(); ++i) {
    Integer p = dot(c.rays()[i], r.e);
    if (i == r.distinguished_ray ? p != -1 : p < 0) return false;
  }
  return true;
}

Integer default_box_bound(const Cone& c) {
  Integer m = 1;
  for (const auto& r : c.rays())
    for (const auto& x : r) m = std::max<Integer>(m, abs(x));
  return 10 * m;
}

namespace {

void require_bound(const Integer& b) {
  if (b < 1) throw InputError("box bound must be at least 1, got " + b.get_str());
}

// <v_t, e> = -1 for t = special, = 0 on `zero`, >= 0 on the remaining rays.
LinearSystem root_system(const Cone& c, std::size_t special, const std::vector<std::size_t>& zero) {
  LinearSystem sys{c.ambient_rank(), {}, {}};
  for (std::size_t i = 0; i < c.ray_count(); ++i) {
    if (i == special)
      sys.equalities.push_back({c.rays()[i], -1});
    else if (std::binary_search(zero.begin(), zero.end(), i))
      sys.equalities.push_back({c.rays()[i], 0});
    else
      sys.inequalities.push_back({c.rays()[i], 0});
  }
  return sys;
}

std::string face_text(const Face& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.rays.size(); ++i) out += (i ? "," : "") + std::to_string(f.rays[i] + 1);
  return out + "}";
}

void require_face_of(const Cone& c, const Face& f) {
  Face real = make_face(c, f.rays);
  if (!(real == f)) throw InputError("face " + face_text(f) + " has the wrong dimension for this cone");
}

}  // namespace

std::vector<DemazureRoot> enumerate_roots(const Cone& c, const Integer& box_bound) {
  require_bound(box_bound);
  std::vector<DemazureRoot> out;
  for (std::size_t t = 0; t < c.ray_count(); ++t) {
    for (auto& e : lattice_points_bounded(root_system(c, t, {}), box_bound)) {
      DemazureRoot r{std::move(e), t};
      if (!is_demazure_root(c, r)) throw TheoryViolation("lattice search returned a non-root " + to_string(r.e));
      out.push_back(std::move(r));
    }
  }
  return out;
}

ConnectionVerdict ConnectionVerdict::yes(const Cone& c, const Face& f1, const Face& f2, DemazureRoot witness,
                                         const Integer& bound) {
  bool ok = is_demazure_root(c, witness) &&
            std::binary_search(f2.rays.begin(), f2.rays.end(), witness.distinguished_ray) &&
            !std::binary_search(f1.rays.begin(), f1.rays.end(), witness.distinguished_ray);
  for (auto i : f1.rays) ok = ok && dot(c.rays()[i], witness.e) == 0;
  if (!ok) throw TheoryViolation("witness " + to_string(witness.e) + " does not connect the pair");
  ConnectionVerdict v;
  v.status = Status::Yes;
  v.witness = std::move(witness);
  v.bound = bound;
  return v;
}

ConnectionVerdict ConnectionVerdict::no(Certificate kind, std::string reason) {
  ConnectionVerdict v;
  v.status = Status::No;
  v.certificate = kind;
  v.reason = std::move(reason);
  return v;
}

ConnectionVerdict ConnectionVerdict::inconclusive(const Integer& bound) {
  ConnectionVerdict v;
  v.status = Status::Inconclusive;
  v.bound = bound;
  v.reason = "no root with coordinates in [-" + bound.get_str() + ", " + bound.get_str() + "]";
  return v;
}

ConnectionVerdict connection_exists(const Cone& c, const Face& f1, const Face& f2, const Integer& box_bound) {
  require_bound(box_bound);
  require_face_of(c, f1);
  require_face_of(c, f2);
  std::vector<std::size_t> extra;
  std::set_difference(f2.rays.begin(), f2.rays.end(), f1.rays.begin(), f1.rays.end(), std::back_inserter(extra));
  if (!std::includes(f2.rays.begin(), f2.rays.end(), f1.rays.begin(), f1.rays.end()) || extra.size() != 1)
    return ConnectionVerdict::no(ConnectionVerdict::Certificate::Combinatorial,
                                 "ray set of " + face_text(f2) + " is not " + face_text(f1) + " plus one ray");

  const std::size_t tau = extra[0];
  LinearSystem sys = root_system(c, tau, f1.rays);
  if (!solve_integer_system(sys))
    return ConnectionVerdict::no(ConnectionVerdict::Certificate::IntegralEqualities,
                                 "<v_" + std::to_string(tau + 1) + ", e> = -1 and <v, e> = 0 on " + face_text(f1) +
                                     " have no integer solution");
  if (!rational_feasible(sys))
    return ConnectionVerdict::no(ConnectionVerdict::Certificate::Rational,
                                 "sign conditions on the remaining rays are infeasible over Q");
  if (auto e = first_lattice_point(sys, box_bound))
    return ConnectionVerdict::yes(c, f1, f2, DemazureRoot{std::move(*e), tau}, box_bound);
  return ConnectionVerdict::inconclusive(box_bound);
}

ConnectionGraph connection_graph(const Cone& c, const Integer& box_bound) {
  ConnectionGraph g{face_lattice(c), {}, box_bound};
  for (std::size_t a = 0; a < g.faces.size(); ++a)
    for (std::size_t t = 0; t < c.ray_count(); ++t) {
      const Face& f1 = g.faces[a];
      if (std::binary_search(f1.rays.begin(), f1.rays.end(), t)) continue;
      std::vector<std::size_t> bigger = f1.rays;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), t), t);
      auto it = std::find_if(g.faces.begin(), g.faces.end(), [&](const Face& f) { return f.rays == bigger; });
      if (it == g.faces.end()) continue;
      std::size_t b = static_cast<std::size_t>(it - g.faces.begin());
      g.candidates.push_back({a, b, connection_exists(c, f1, *it, box_bound)});
    }
  return g;
}

std::vector<std::size_t> connected_components(const ConnectionGraph& g) {
  std::vector<std::size_t> parent(g.faces.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& cand : g.candidates)
    if (cand.verdict.status == ConnectionVerdict::Status::Yes) {
      std::size_t a = find(cand.from), b = find(cand.to);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> label(g.faces.size()), remap(g.faces.size(), g.faces.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < g.faces.size(); ++i) {
    std::size_t r = find(i);
    if (remap[r] == g.faces.size()) remap[r] = next++;
    label[i] = remap[r];
  }
  return label;
}

std::vector<IsolatedFace> isolated_faces(const ConnectionGraph& g) {
  std::vector<IsolatedFace> out;
  for (std::size_t i = 0; i < g.faces.size(); ++i) {
    bool any_yes = false, all_certified = true;
    for (const auto& cand : g.candidates) {
      if (cand.from != i && cand.to != i) continue;
      any_yes |= cand.verdict.status == ConnectionVerdict::Status::Yes;
      all_certified &= cand.verdict.status == ConnectionVerdict::Status::No;
    }
    if (!any_yes) out.push_back({g.faces[i], all_certified});
  }
  return out;
}

const char* to_string(ConnectionVerdict::Status s) {
  switch (s) {
    case ConnectionVerdict::Status::Yes:
      return "yes";
    case ConnectionVerdict::Status::No:
      return "no";
    case ConnectionVerdict::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* to_string(ConnectionVerdict::Certificate c) {
  switch (c) {
    case ConnectionVerdict::Certificate::None:
      return "none";
    case ConnectionVerdict::Certificate::Combinatorial:
      return "combinatorial";
    case ConnectionVerdict::Certificate::IntegralEqualities:
      return "integral-equalities";
    case ConnectionVerdict::Certificate::Rational:
      return "rational";
  }
  return "?";
}

}  // namespace toric
