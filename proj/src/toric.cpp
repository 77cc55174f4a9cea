#include "toric/toric.hpp"

#include <algorithm>

#include "toric/errors.hpp"

namespace toric {

namespace {

std::string ray_set_text(const std::vector<std::size_t>& rays) {
  std::string out = "{";
  for (std::size_t i = 0; i < rays.size(); ++i) out += (i ? "," : "") + std::to_string(rays[i] + 1);
  return out + "}";
}

void require_face(const ToricData& t, const Face& f) {
  if (std::find(t.faces.begin(), t.faces.end(), f) == t.faces.end())
    throw InputError("ray set " + ray_set_text(f.rays) + " is not a face of this cone");
}

std::vector<GroupElement> classes_over(const ToricData& t, const std::vector<std::size_t>& idx) {
  std::vector<GroupElement> out;
  for (auto i : idx) out.push_back(t.divisor_classes[i]);
  return out;
}

}  // namespace

ToricData build_toric(const Cone& c) {
  if (!c.is_full_dimensional())
    throw InputError("class group data needs a full-dimensional cone; split off the torus factor first");
  Cokernel cok = group_from_cokernel(c.ray_matrix());
  return ToricData{c, std::move(cok.group), std::move(cok.images), face_lattice(c)};
}

FaceOrbitData face_orbit_data(const ToricData& t, const Face& f) {
  require_face(t, f);
  std::vector<std::size_t> dset;
  for (std::size_t i = 0; i < t.cone.ray_count(); ++i)
    if (!std::binary_search(f.rays.begin(), f.rays.end(), i)) dset.push_back(i);
  SubgroupHandle g = subgroup_canon(t.class_group, classes_over(t, dset));
  FgAbGroup local = quotient_group(t.class_group, g);
  const std::size_t orbit_dim = t.cone.ambient_rank() - f.dim;
  const bool smooth = is_smooth_face(t.cone, f);
  return FaceOrbitData{f, std::move(dset), std::move(g), std::move(local), orbit_dim, smooth};
}

SemigroupCheck verify_semigroup_equals_group(const ToricData& t, const Face& f, const Integer& coeff_bound) {
  FaceOrbitData d = face_orbit_data(t, f);
  auto gens = classes_over(t, d.dset);
  SemigroupCheck out;
  for (auto i : d.dset) {
    GroupElement target = t.class_group.negate(t.divisor_classes[i]);
    SemigroupVerdict v = semigroup_member(t.class_group, gens, target, coeff_bound);
    switch (v.kind) {
      case SemigroupVerdict::Kind::Yes:
        break;
      case SemigroupVerdict::Kind::No:
        throw TheoryViolation("semigroup of face " + ray_set_text(f.rays) + " is not a group: -[D_" +
                              std::to_string(i + 1) + "] = " + t.class_group.describe(target) +
                              " is not a nonnegative combination of the classes over " + ray_set_text(d.dset));
      case SemigroupVerdict::Kind::Inconclusive:
        out.status = SemigroupCheck::Status::Inconclusive;
        out.unresolved.push_back(i);
        break;
    }
  }
  if (!out.unresolved.empty())
    out.details = "inverse classes of rays " + ray_set_text(out.unresolved) + " not reached with coefficients <= " +
                  coeff_bound.get_str();
  return out;
}

}  // namespace toric
