#include "toric/luna.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "toric/errors.hpp"
#include "toric/linear_system.hpp"
#include "toric/normal_form.hpp"

namespace toric {

void WeightSystem::validate() const {
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!group.contains(weights[i]))
      throw InputError("weight " + std::to_string(i + 1) + " " + to_string(weights[i].coords) + " is not an element of " +
                       group.describe());
}

namespace {

std::string support_text(const Support& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.indices.size(); ++i) out += (i ? "," : "") + std::to_string(s.indices[i] + 1);
  return out + "}";
}

std::vector<GroupElement> selected(const WeightSystem& w, const Support& s) {
  std::vector<GroupElement> out;
  for (auto i : s.indices) {
    if (i >= w.weights.size())
      throw InputError("support index " + std::to_string(i + 1) + " exceeds the " + std::to_string(w.weights.size()) +
                       " weights");
    out.push_back(w.weights[i]);
  }
  return out;
}

bool is_full(const FgAbGroup& k, const SubgroupHandle& h) { return quotient_group(k, h).is_trivial(); }

std::vector<IntVector> rows_of(const IntegerMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row_vector(i));
  return out;
}

Support complement(std::size_t m, const std::vector<std::size_t>& rays) {
  Support s;
  for (std::size_t i = 0; i < m; ++i)
    if (!std::binary_search(rays.begin(), rays.end(), i)) s.indices.push_back(i);
  return s;
}

}  // namespace

WeightSystem cox_weight_system(const ToricData& t) { return WeightSystem{t.class_group, t.divisor_classes}; }

bool is_closed_support(const WeightSystem& w, const Support& s) {
  auto gens = selected(w, s);
  const std::size_t r = w.group.free_rank();
  if (gens.empty() || r == 0) return true;
  // Subspace iff some relation has every coefficient >= 1.
  LinearSystem sys{gens.size(), {}, {}};
  for (std::size_t j = 0; j < r; ++j) {
    IntVector c(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) c[i] = gens[i].coords[j];
    sys.equalities.push_back({c, 0});
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    IntVector e(gens.size());
    e[i] = 1;
    sys.inequalities.push_back({e, 1});
  }
  return rational_feasible(sys).has_value();
}

SubgroupHandle stabilizer_subgroup(const WeightSystem& w, const Support& s) {
  return subgroup_canon(w.group, selected(w, s));
}

std::vector<LunaStratum> luna_strata(const WeightSystem& w) {
  const std::size_t m = w.weights.size();
  if (m > kMaxLunaWeights)
    throw InputError("Luna strata enumerate all supports; " + std::to_string(m) + " weights exceed the limit of " +
                     std::to_string(kMaxLunaWeights));
  w.validate();
  std::map<std::vector<IntVector>, std::size_t> by_basis;
  std::vector<LunaStratum> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Support s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.indices.push_back(i);
    if (!is_closed_support(w, s)) continue;
    SubgroupHandle h = stabilizer_subgroup(w, s);
    std::size_t dim = s.indices.size() - rank_over_rationals(w.group, selected(w, s));
    auto key = rows_of(h.canonical_basis());
    auto it = by_basis.find(key);
    if (it == by_basis.end()) {
      by_basis.emplace(key, out.size());
      out.push_back(LunaStratum{std::move(h), {std::move(s)}, dim});
    } else {
      LunaStratum& st = out[it->second];
      st.supports.push_back(std::move(s));
      st.dim = std::max(st.dim, dim);
    }
  }
  for (auto& st : out) std::sort(st.supports.begin(), st.supports.end());
  std::sort(out.begin(), out.end(), [](const LunaStratum& a, const LunaStratum& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return rows_of(a.subgroup.canonical_basis()) < rows_of(b.subgroup.canonical_basis());
  });
  return out;
}

StabilityVerdict check_strongly_stable(const WeightSystem& w) {
  w.validate();
  const std::size_t m = w.weights.size();
  std::vector<Support> candidates;
  Support full;
  for (std::size_t i = 0; i < m; ++i) full.indices.push_back(i);
  candidates.push_back(full);
  for (std::size_t drop = 0; drop < m; ++drop) {
    Support s;
    for (std::size_t i = 0; i < m; ++i)
      if (i != drop) s.indices.push_back(i);
    candidates.push_back(std::move(s));
  }
  StabilityVerdict v;
  for (auto& s : candidates) {
    bool good = is_closed_support(w, s) && is_full(w.group, stabilizer_subgroup(w, s));
    if (!good) v.offending.push_back(s);
  }
  std::sort(v.offending.begin(), v.offending.end());
  v.offending.erase(std::unique(v.offending.begin(), v.offending.end()), v.offending.end());
  v.stable = v.offending.empty();
  return v;
}

GaleDual gale_dual(const WeightSystem& w) {
  StabilityVerdict st = check_strongly_stable(w);
  if (!st.stable) {
    std::string bad;
    for (const auto& s : st.offending) bad += (bad.empty() ? "" : ", ") + support_text(s);
    throw InputError("Gale duality needs a strongly stable weight system; bad supports: " + bad);
  }
  const std::size_t m = w.weights.size();
  const std::size_t r = w.group.free_rank();
  const std::size_t t = w.group.torsion().size();
  // x in Z^m with sum x_i chi_i = 0 in K; torsion coordinates get a multiplier y_j.
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < r + t; ++j) {
    IntVector c(m + t);
    for (std::size_t i = 0; i < m; ++i) c[i] = w.weights[i].coords[j];
    if (j >= r) c[m + (j - r)] = -w.group.torsion()[j - r];
    eqs.push_back({c, 0});
  }
  auto sol = solve_integer_system(m + t, eqs);
  std::vector<IntVector> proj;
  for (auto v : sol->kernel_basis) {
    v.resize(m);
    proj.push_back(std::move(v));
  }
  IntegerMatrix basis = hermite_normal_form(IntegerMatrix::from_rows(proj, m)).basis();
  const std::size_t d = basis.rows();
  if (d != m - r) throw TheoryViolation("weight kernel has rank " + std::to_string(d) + ", expected " + std::to_string(m - r));

  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < m; ++i) rays.push_back(primitive(basis.column(i)));
  try {
    Cone c = build_cone(d, rays);
    return GaleDual{std::move(basis), std::move(c)};
  } catch (const InputError& e) {
    throw InputError(std::string("weight system does not come from a pointed cone: ") + e.what());
  }
}

std::vector<BridgeEntry> face_support_bridge(const ToricData& t) {
  WeightSystem w = cox_weight_system(t);
  const std::size_t m = w.weights.size();
  std::vector<BridgeEntry> out;
  std::set<Support> seen;
  for (const auto& f : t.faces) {
    Support s = complement(m, f.rays);
    if (!is_closed_support(w, s))
      throw TheoryViolation("support " + support_text(s) + " of face complement is not closed");
    FaceOrbitData d = face_orbit_data(t, f);
    if (!subgroups_equal(stabilizer_subgroup(w, s), d.g_subgroup))
      throw TheoryViolation("stabilizer subgroup of support " + support_text(s) + " differs from G(O)");
    if (!seen.insert(s).second) throw TheoryViolation("two faces share the support " + support_text(s));
    out.push_back({f, std::move(s)});
  }
  if (m <= kMaxLunaWeights) {
    std::size_t closed = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      Support s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.indices.push_back(i);
      if (is_closed_support(w, s)) {
        ++closed;
        if (!seen.count(s)) throw TheoryViolation("closed support " + support_text(s) + " is not a face complement");
      }
    }
    if (closed != t.faces.size()) throw TheoryViolation("closed supports and faces differ in number");
  }
  return out;
}

}  // namespace toric
