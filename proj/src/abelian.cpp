#include "toric/abelian.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "toric/errors.hpp"
#include "toric/linear_system.hpp"
#include "toric/normal_form.hpp"

namespace toric {

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InputError("invariant factor " + torsion_[i].get_str() + " is not >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw InputError("invariant factors " + torsion_[i - 1].get_str() + ", " + torsion_[i].get_str() +
                       " violate the divisibility chain");
  }
}

std::optional<Integer> FgAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Integer FgAbGroup::exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

GroupElement FgAbGroup::element(IntVector coords) const {
  if (coords.size() != coord_count())
    throw InputError("element " + to_string(coords) + " has " + std::to_string(coords.size()) +
                     " coordinates, group " + describe() + " needs " + std::to_string(coord_count()));
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const Integer& x = coords[free_rank_ + i];
    if (x < 0 || x >= torsion_[i])
      throw InputError("torsion coordinate " + x.get_str() + " of " + to_string(coords) + " is not reduced modulo " +
                       torsion_[i].get_str() + " (use " + floor_mod(x, torsion_[i]).get_str() + ")");
  }
  return GroupElement{std::move(coords)};
}

GroupElement FgAbGroup::reduce(IntVector coords) const {
  if (coords.size() != coord_count()) throw InputError("element has the wrong number of coordinates");
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    coords[free_rank_ + i] = floor_mod(coords[free_rank_ + i], torsion_[i]);
  return GroupElement{std::move(coords)};
}

GroupElement FgAbGroup::add(const GroupElement& a, const GroupElement& b) const {
  IntVector c(coord_count());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return reduce(std::move(c));
}

GroupElement FgAbGroup::negate(const GroupElement& a) const { return scale(a, -1); }

GroupElement FgAbGroup::scale(const GroupElement& a, const Integer& k) const {
  IntVector c(a.coords);
  for (auto& x : c) x *= k;
  return reduce(std::move(c));
}

bool FgAbGroup::contains(const GroupElement& a) const {
  if (a.coords.size() != coord_count()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const Integer& x = a.coords[free_rank_ + i];
    if (x < 0 || x >= torsion_[i]) return false;
  }
  return true;
}

std::optional<Integer> FgAbGroup::element_order(const GroupElement& a) const {
  for (std::size_t i = 0; i < free_rank_; ++i)
    if (a.coords[i] != 0) return std::nullopt;
  Integer ord = 1;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    Integer part = torsion_[i] / gcd(torsion_[i], a.coords[free_rank_ + i]);
    ord = lcm(ord, part);
  }
  return ord;
}

std::string FgAbGroup::describe() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::string FgAbGroup::describe(const GroupElement& a) const { return to_string(a.coords); }

// ---------------------------------------------------------------------------

std::vector<GroupElement> SubgroupHandle::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    GroupElement e = parent_.reduce(basis_.row_vector(i));
    if (!is_zero(e.coords)) out.push_back(std::move(e));
  }
  return out;
}

std::string SubgroupHandle::describe() const {
  auto gens = generators();
  if (gens.empty()) return "0";
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += to_string(gens[i].coords);
  }
  return out + ">";
}

Cokernel group_from_cokernel(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  SmithForm snf = smith_normal_form(a);
  auto factors = snf.invariant_factors();
  const std::size_t rank = factors.size();

  // Rows of U that survive: free rows rank..m-1, then torsion rows with d_i > 1.
  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Integer> torsion;
  for (std::size_t i = rank; i < m; ++i) free_rows.push_back(i);
  for (std::size_t i = 0; i < rank; ++i)
    if (factors[i] > 1) {
      torsion_rows.push_back(i);
      torsion.push_back(factors[i]);
    }
  Cokernel out{FgAbGroup(free_rows.size(), torsion), {}};
  for (std::size_t j = 0; j < m; ++j) {
    IntVector c;
    for (auto r : free_rows) c.push_back(snf.U(r, j));
    for (auto r : torsion_rows) c.push_back(snf.U(r, j));
    out.images.push_back(out.group.reduce(std::move(c)));
  }
  return out;
}

namespace {

IntegerMatrix relation_rows(const FgAbGroup& g) {
  IntegerMatrix rel(g.torsion().size(), g.coord_count());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) rel(i, g.free_rank() + i) = g.torsion()[i];
  return rel;
}

void require_same_parent(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (!(a.parent() == b.parent()))
    throw InputError("subgroups of different groups: " + a.parent().describe() + " vs " + b.parent().describe());
}

bool in_row_lattice(const IntegerMatrix& basis, std::span<const Integer> v) {
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < basis.cols(); ++j) eqs.push_back({basis.column(j), v[j]});
  return solve_integer_system(basis.rows(), eqs).has_value();
}

}  // namespace

SubgroupHandle subgroup_canon(const FgAbGroup& g, const std::vector<GroupElement>& gens) {
  IntegerMatrix rel = relation_rows(g);
  IntegerMatrix lattice(gens.size() + rel.rows(), g.coord_count());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!g.contains(gens[i])) throw InputError("generator " + to_string(gens[i].coords) + " is not in " + g.describe());
    for (std::size_t j = 0; j < g.coord_count(); ++j) lattice(i, j) = gens[i].coords[j];
  }
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < g.coord_count(); ++j) lattice(gens.size() + i, j) = rel(i, j);
  return SubgroupHandle(g, hermite_normal_form(lattice).basis());
}

bool subgroups_equal(const SubgroupHandle& a, const SubgroupHandle& b) {
  require_same_parent(a, b);
  return a.canonical_basis() == b.canonical_basis();
}

bool subgroup_leq(const SubgroupHandle& a, const SubgroupHandle& b) {
  require_same_parent(a, b);
  for (std::size_t i = 0; i < a.canonical_basis().rows(); ++i)
    if (!in_row_lattice(b.canonical_basis(), a.canonical_basis().row(i))) return false;
  return true;
}

FgAbGroup quotient_group(const FgAbGroup& g, const SubgroupHandle& s) {
  if (!(s.parent() == g)) throw InputError("subgroup does not belong to " + g.describe());
  return group_from_cokernel(s.canonical_basis().transpose()).group;
}

FgAbGroup subgroup_structure(const SubgroupHandle& s) {
  const IntegerMatrix& basis = s.canonical_basis();
  IntegerMatrix rel = relation_rows(s.parent());
  // Coordinates of each relation vector in the subgroup's basis, as columns.
  IntegerMatrix coords(basis.rows(), rel.rows());
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    std::vector<Equality> eqs;
    for (std::size_t j = 0; j < basis.cols(); ++j) eqs.push_back({basis.column(j), rel(r, j)});
    auto sol = solve_integer_system(basis.rows(), eqs);
    if (!sol) throw TheoryViolation("relation vector outside a subgroup's preimage lattice");
    for (std::size_t i = 0; i < basis.rows(); ++i) coords(i, r) = sol->particular[i];
  }
  return group_from_cokernel(coords).group;
}

std::size_t rank_over_rationals(const FgAbGroup& g, const std::vector<GroupElement>& gens) {
  IntegerMatrix m(gens.size(), g.free_rank());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < g.free_rank(); ++j) m(i, j) = gens[i].coords[j];
  return rank_of(m);
}

// ---------------------------------------------------------------------------
// Semigroup membership

namespace {

constexpr std::uint64_t kMaxBfsOrder = 1u << 22;

// Breadth-first search over a finite group; complete.
SemigroupVerdict finite_search(const FgAbGroup& g, const std::vector<GroupElement>& gens, const GroupElement& target) {
  const auto& tors = g.torsion();
  const std::size_t t = tors.size();
  std::vector<std::uint64_t> stride(t);
  std::uint64_t size = 1;
  for (std::size_t i = t; i-- > 0;) {
    stride[i] = size;
    size *= tors[i].get_ui();
  }
  auto index_of = [&](const IntVector& c) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < t; ++i) idx += c[i].get_ui() * stride[i];
    return idx;
  };
  constexpr std::uint32_t kUnseen = 0xffffffffu;
  std::vector<std::uint32_t> via(size, kUnseen);
  std::vector<std::uint64_t> pred(size, 0);
  std::vector<IntVector> values(size);
  const std::uint64_t start = index_of(g.zero().coords);
  via[start] = static_cast<std::uint32_t>(gens.size());
  values[start] = g.zero().coords;
  std::deque<std::uint64_t> queue{start};
  const std::uint64_t goal = index_of(target.coords);
  while (!queue.empty() && via[goal] == kUnseen) {
    std::uint64_t cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      GroupElement next = g.add(GroupElement{values[cur]}, gens[i]);
      std::uint64_t ni = index_of(next.coords);
      if (via[ni] != kUnseen) continue;
      via[ni] = static_cast<std::uint32_t>(i);
      pred[ni] = cur;
      values[ni] = std::move(next.coords);
      queue.push_back(ni);
    }
  }
  SemigroupVerdict v;
  if (via[goal] == kUnseen) {
    v.kind = SemigroupVerdict::Kind::No;
    return v;
  }
  v.kind = SemigroupVerdict::Kind::Yes;
  v.coefficients.assign(gens.size(), 0);
  for (std::uint64_t cur = goal; cur != start; cur = pred[cur]) ++v.coefficients[via[cur]];
  return v;
}

// Integer solution of sum_{i in idx} c_i gens[i] == target in g, if any.
std::optional<IntVector> group_combination(const FgAbGroup& g, const std::vector<GroupElement>& gens,
                                           const std::vector<std::size_t>& idx, const IntVector& target) {
  const std::size_t k = idx.size();
  const std::size_t r = g.free_rank();
  const std::size_t t = g.torsion().size();
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < r + t; ++j) {
    IntVector c(k + t);
    for (std::size_t a = 0; a < k; ++a) c[a] = gens[idx[a]].coords[j];
    if (j >= r) c[k + (j - r)] = -g.torsion()[j - r];
    eqs.push_back({c, target[j]});
  }
  auto sol = solve_integer_system(k + t, eqs);
  if (!sol) return std::nullopt;
  sol->particular.resize(k);
  return sol->particular;
}

// Free-part equalities sum_i x_i chi_i = rhs over the chosen generators.
std::vector<Equality> free_equalities(const FgAbGroup& g, const std::vector<GroupElement>& gens,
                                      const std::vector<std::size_t>& idx, const IntVector& rhs) {
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < g.free_rank(); ++j) {
    IntVector c(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) c[a] = gens[idx[a]].coords[j];
    eqs.push_back({c, rhs[j]});
  }
  return eqs;
}

Integer lcm_of_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  return l;
}

}  // namespace

SemigroupVerdict semigroup_member(const FgAbGroup& g, const std::vector<GroupElement>& gens, const GroupElement& target,
                                  const Integer& coeff_bound) {
  if (coeff_bound < 1) throw InputError("coefficient bound must be positive");
  if (!g.contains(target)) throw InputError("target " + to_string(target.coords) + " is not in " + g.describe());
  for (const auto& x : gens)
    if (!g.contains(x)) throw InputError("generator " + to_string(x.coords) + " is not in " + g.describe());

  SemigroupVerdict v;
  if (is_zero(target.coords)) {
    v.kind = SemigroupVerdict::Kind::Yes;
    v.coefficients.assign(gens.size(), 0);
    return v;
  }
  if (g.is_finite() && *g.order() <= kMaxBfsOrder) return finite_search(g, gens, target);

  const std::size_t r = g.free_rank();
  const std::size_t k = gens.size();
  const IntVector zero_free(r);

  // Rational relaxation of the free part: sum c_i chi_i = target, c >= 0.
  {
    std::vector<std::size_t> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    LinearSystem relax{k, free_equalities(g, gens, all, target.coords), {}};
    for (std::size_t i = 0; i < k; ++i) {
      IntVector e(k);
      e[i] = 1;
      relax.inequalities.push_back({e, 0});
    }
    if (!rational_feasible(relax)) {
      v.kind = SemigroupVerdict::Kind::No;
      return v;
    }
  }

  // Split the generators: `lin` are those occurring in a nonnegative relation
  // with positive coefficient. Their semigroup is the group they generate.
  std::vector<std::size_t> lin, pointed;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> all(k);
    for (std::size_t j = 0; j < k; ++j) all[j] = j;
    LinearSystem rel{k, free_equalities(g, gens, all, zero_free), {}};
    for (std::size_t j = 0; j < k; ++j) {
      IntVector e(k);
      e[j] = 1;
      rel.inequalities.push_back({e, j == i ? 1 : 0});
    }
    (rational_feasible(rel) ? lin : pointed).push_back(i);
  }

  // A relation with every coefficient on `lin` >= 1, vanishing in g.
  IntVector lambda(lin.size());
  if (!lin.empty()) {
    LinearSystem rel{lin.size(), free_equalities(g, gens, lin, zero_free), {}};
    for (std::size_t a = 0; a < lin.size(); ++a) {
      IntVector e(lin.size());
      e[a] = 1;
      rel.inequalities.push_back({e, 1});
    }
    auto w = rational_feasible(rel);
    if (!w) throw TheoryViolation("generators with positive relations admit no joint positive relation");
    Integer scale = lcm_of_denominators(*w) * g.exponent();
    for (std::size_t a = 0; a < lin.size(); ++a) lambda[a] = Integer((*w)[a] * scale);
  }

  // Nonnegative coefficients on `lin` reaching `rest`, if rest lies in their group.
  auto lin_part = [&](const IntVector& rest) -> std::optional<IntVector> {
    auto c = group_combination(g, gens, lin, rest);
    if (!c) return std::nullopt;
    Integer shift = 0;
    for (std::size_t a = 0; a < lin.size(); ++a)
      if ((*c)[a] < 0) shift = std::max<Integer>(shift, -floor_div((*c)[a], lambda[a]));
    for (std::size_t a = 0; a < lin.size(); ++a) (*c)[a] += shift * lambda[a];
    return c;
  };

  auto finish = [&](const IntVector& c_pointed, const IntVector& c_lin) {
    v.kind = SemigroupVerdict::Kind::Yes;
    v.coefficients.assign(k, 0);
    for (std::size_t a = 0; a < pointed.size(); ++a) v.coefficients[pointed[a]] = c_pointed[a];
    for (std::size_t a = 0; a < lin.size(); ++a) v.coefficients[lin[a]] = c_lin[a];
    GroupElement sum = g.zero();
    for (std::size_t i = 0; i < k; ++i) {
      if (v.coefficients[i] < 0) throw TheoryViolation("negative semigroup coefficient");
      sum = g.add(sum, g.scale(gens[i], v.coefficients[i]));
    }
    if (!(sum == target)) throw TheoryViolation("semigroup coefficients do not reach the target");
    return v;
  };

  if (pointed.empty()) {
    if (auto c = lin_part(target.coords)) return finish({}, *c);
    v.kind = SemigroupVerdict::Kind::No;
    return v;
  }

  // phi vanishes on `lin` and is positive on `pointed`; it pins
  // sum_p c_p phi(chi_p) = phi(target) and bounds each c_p.
  LinearSystem dual{r, {}, {}};
  for (auto i : lin) dual.equalities.push_back({IntVector(gens[i].coords.begin(), gens[i].coords.begin() + r), 0});
  for (auto i : pointed) dual.inequalities.push_back({IntVector(gens[i].coords.begin(), gens[i].coords.begin() + r), 1});
  auto phi_q = rational_feasible(dual);
  if (!phi_q) throw TheoryViolation("no functional separates the pointed generators");
  Integer den = lcm_of_denominators(*phi_q);
  IntVector phi(r);
  for (std::size_t j = 0; j < r; ++j) phi[j] = Integer((*phi_q)[j] * den);
  auto phi_at = [&](const GroupElement& x) { return dot(phi, std::span<const Integer>(x.coords.data(), r)); };

  const Integer goal = phi_at(target);
  if (goal < 0) {
    v.kind = SemigroupVerdict::Kind::No;
    return v;
  }
  const std::size_t p = pointed.size();
  LinearSystem sys{p, {}, {}};
  IntVector weights(p);
  bool exhaustive = true;
  Integer box = 0;
  for (std::size_t a = 0; a < p; ++a) {
    weights[a] = phi_at(gens[pointed[a]]);
    Integer complete = goal / weights[a];
    Integer bound = complete;
    if (complete > coeff_bound) {
      bound = coeff_bound;
      exhaustive = false;
    }
    box = std::max<Integer>(box, bound);
    IntVector lo(p), hi(p);
    lo[a] = 1;
    hi[a] = -1;
    sys.inequalities.push_back({lo, 0});
    sys.inequalities.push_back({hi, Rational(-bound)});
  }
  sys.equalities.push_back({weights, goal});

  std::optional<SemigroupVerdict> found;
  for_each_lattice_point(sys, box, [&](const IntVector& c) {
    IntVector rest = target.coords;
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= c[a] * gens[pointed[a]].coords[j];
    if (auto cl = lin_part(rest)) {
      found = finish(c, *cl);
      return false;
    }
    return true;
  });
  if (found) return *found;
  v.kind = exhaustive ? SemigroupVerdict::Kind::No : SemigroupVerdict::Kind::Inconclusive;
  v.searched_bound = coeff_bound;
  return v;
}

}  // namespace toric
