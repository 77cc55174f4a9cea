#include "toric/strata.hpp"

#include <algorithm>
#include <map>

#include "toric/errors.hpp"
#include "toric/luna.hpp"

namespace toric {

namespace {

std::string rays_text(const std::vector<std::size_t>& rays) {
  std::string out = "{";
  for (std::size_t i = 0; i < rays.size(); ++i) out += (i ? "," : "") + std::to_string(rays[i] + 1);
  return out + "}";
}

std::vector<IntVector> rows_of(const IntegerMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row_vector(i));
  return out;
}

// Canonical form of a partition given as one label per element.
std::vector<std::size_t> relabel(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> first;
  std::vector<std::size_t> out;
  for (auto l : labels) out.push_back(first.emplace(l, first.size()).first->second);
  return out;
}

}  // namespace

std::vector<ClosureEdge> closure_order(const std::vector<Stratum>& strata) {
  const std::size_t k = strata.size();
  std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) leq[i][j] = i != j && subgroup_leq(strata[i].subgroup, strata[j].subgroup);
  std::vector<ClosureEdge> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!leq[i][j]) continue;
      bool covered = true;
      for (std::size_t m = 0; m < k && covered; ++m) covered = !(leq[i][m] && leq[m][j]);
      if (covered) out.push_back({i, j});
    }
  return out;
}

StratificationReport stratify(std::size_t rank, const std::vector<IntVector>& raw_rays, const StratifyOptions& options) {
  if (options.coeff_bound < 1) throw InputError("coefficient bound must be at least 1");
  if (options.box_bound && *options.box_bound < 1) throw InputError("box bound must be at least 1");

  StratificationReport rep;
  rep.input_rank = rank;
  rep.input_rays = raw_rays;
  rep.options = options;

  // Validate in the caller's coordinates first so messages refer to the input.
  std::vector<IntVector> rays;
  if (!raw_rays.empty()) rays = build_cone(rank, raw_rays, options.normalize).rays();
  DegenerateSplit split = split_degenerate(rank, rays);
  rep.torus_rank = split.torus_rank;
  rep.sublattice_basis = split.sublattice_basis;
  rep.cone = split.induced;
  rep.box_bound = options.box_bound ? *options.box_bound : default_box_bound(rep.cone);

  ToricData t = build_toric(rep.cone);
  rep.class_group = t.class_group;
  rep.divisor_classes = t.divisor_classes;
  const std::size_t nf = t.faces.size();

  for (const auto& f : t.faces) {
    FaceOrbitData d = face_orbit_data(t, f);
    SemigroupCheck sc = verify_semigroup_equals_group(t, f, options.coeff_bound);
    d.orbit_dim += rep.torus_rank;
    rep.faces.push_back(FaceRecord{std::move(d), std::move(sc), 0});
  }

  // Route A: faces with equal G(O).
  std::map<std::vector<IntVector>, std::size_t> by_subgroup;
  std::vector<std::size_t> route_a(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    auto key = rows_of(rep.faces[i].data.g_subgroup.canonical_basis());
    auto it = by_subgroup.emplace(key, rep.strata.size()).first;
    if (it->second == rep.strata.size())
      rep.strata.push_back(Stratum{rep.faces[i].data.g_subgroup, {}, 0, true, false});
    Stratum& s = rep.strata[it->second];
    s.faces.push_back(i);
    s.dim = std::max(s.dim, rep.faces[i].data.orbit_dim);
    s.smooth = s.smooth && rep.faces[i].data.smooth;
    route_a[i] = it->second;
  }

  // Route B: Luna strata of the Cox weights, read through the bridge.
  auto bridge = face_support_bridge(t);
  rep.checks.bridge_verified = true;
  WeightSystem w = cox_weight_system(t);
  auto luna = luna_strata(w);
  std::vector<std::size_t> route_b(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const Support& s = bridge[i].support;
    auto it = std::find_if(luna.begin(), luna.end(), [&](const LunaStratum& l) {
      return std::binary_search(l.supports.begin(), l.supports.end(), s);
    });
    if (it == luna.end()) throw TheoryViolation("face " + rays_text(t.faces[i].rays) + " has no Luna stratum");
    route_b[i] = static_cast<std::size_t>(it - luna.begin());
  }
  if (relabel(route_a) != relabel(route_b) || luna.size() != rep.strata.size())
    throw TheoryViolation("G(O) classes and Luna strata partition the faces differently");
  for (std::size_t i = 0; i < nf; ++i) {
    const LunaStratum& l = luna[route_b[i]];
    const Stratum& a = rep.strata[route_a[i]];
    if (!subgroups_equal(l.subgroup, a.subgroup) || l.dim + rep.torus_rank != a.dim)
      throw TheoryViolation("Luna stratum of face " + rays_text(t.faces[i].rays) + " has a different subgroup or dimension");
  }
  rep.checks.luna_agrees = true;

  // Route C: components of the root-connection graph.
  rep.connections = connection_graph(rep.cone, rep.box_bound);
  auto route_c = connected_components(rep.connections);
  bool all_conclusive = true;
  for (const auto& cand : rep.connections.candidates) {
    ++rep.checks.connection_pairs;
    if (cand.verdict.status == ConnectionVerdict::Status::Yes && route_a[cand.from] != route_a[cand.to])
      throw TheoryViolation("root " + to_string(cand.verdict.witness->e) + " joins faces " +
                            rays_text(t.faces[cand.from].rays) + " and " + rays_text(t.faces[cand.to].rays) +
                            " from different strata");
    if (!cand.verdict.conclusive()) {
      all_conclusive = false;
      ++rep.checks.connection_inconclusive;
      rep.warnings.push_back("connection " + rays_text(t.faces[cand.from].rays) + " -> " +
                             rays_text(t.faces[cand.to].rays) + " inconclusive within box " + rep.box_bound.get_str());
    }
  }
  if (relabel(route_c) == relabel(route_a)) {
    rep.checks.connections = all_conclusive ? "confirmed" : "consistent";
  } else if (all_conclusive) {
    throw TheoryViolation("root connections split a stratum although every pair is decided");
  } else {
    rep.checks.connections = "refines";
    rep.warnings.push_back("root connections resolve only a refinement of the strata; raise --bound");
  }

  for (std::size_t i = 0; i < nf; ++i) {
    rep.faces[i].stratum = route_a[i];
    const SemigroupCheck& sc = rep.faces[i].semigroup;
    if (sc.status == SemigroupCheck::Status::Verified) {
      ++rep.checks.semigroup_verified;
    } else {
      ++rep.checks.semigroup_inconclusive;
      rep.warnings.push_back("semigroup check for face " + rays_text(t.faces[i].rays) + ": " + sc.details);
    }
  }

  // Order strata by descending dimension, then by subgroup basis.
  std::vector<std::size_t> order(rep.strata.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rep.strata[a].dim != rep.strata[b].dim) return rep.strata[a].dim > rep.strata[b].dim;
    return rows_of(rep.strata[a].subgroup.canonical_basis()) < rows_of(rep.strata[b].subgroup.canonical_basis());
  });
  std::vector<std::size_t> pos(order.size());
  std::vector<Stratum> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = i;
    sorted.push_back(std::move(rep.strata[order[i]]));
  }
  rep.strata = std::move(sorted);
  for (auto& f : rep.faces) f.stratum = pos[f.stratum];

  // Principal stratum: the one holding the apex; it must be the smooth locus.
  Stratum& principal = rep.strata[rep.faces.front().stratum];
  principal.principal = true;
  if (!quotient_group(rep.class_group, principal.subgroup).is_trivial())
    throw TheoryViolation("the stratum of the open orbit does not have the full class group");
  for (std::size_t i = 0; i < nf; ++i) {
    bool in_principal = rep.faces[i].stratum == rep.faces.front().stratum;
    if (in_principal != rep.faces[i].data.smooth)
      throw TheoryViolation("face " + rays_text(t.faces[i].rays) + (in_principal ? " is singular but principal"
                                                                                  : " is smooth but not principal"));
  }
  rep.checks.principal_is_smooth_locus = true;

  rep.closure = closure_order(rep.strata);
  const std::size_t top = rep.faces.front().stratum;
  for (const auto& e : rep.closure)
    if (rep.strata[e.lower].dim > rep.strata[e.upper].dim)
      throw TheoryViolation("closure order runs against dimension");
  for (std::size_t i = 0; i < rep.strata.size(); ++i)
    if (i != top && !subgroup_leq(rep.strata[i].subgroup, rep.strata[top].subgroup))
      throw TheoryViolation("principal stratum is not the maximum of the closure order");
  return rep;
}

}  // namespace toric
