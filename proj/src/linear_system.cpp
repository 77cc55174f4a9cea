#include "toric/linear_system.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

#include "toric/errors.hpp"
#include "toric/matrix.hpp"
#include "toric/normal_form.hpp"

namespace toric {

void LinearSystem::validate() const {
  for (std::size_t i = 0; i < equalities.size(); ++i)
    if (equalities[i].coeffs.size() != num_vars)
      throw InputError("equality " + std::to_string(i) + " has " + std::to_string(equalities[i].coeffs.size()) +
                       " coefficients, expected " + std::to_string(num_vars));
  for (std::size_t i = 0; i < inequalities.size(); ++i)
    if (inequalities[i].coeffs.size() != num_vars)
      throw InputError("inequality " + std::to_string(i) + " has " +
                       std::to_string(inequalities[i].coeffs.size()) + " coefficients, expected " +
                       std::to_string(num_vars));
}

namespace {

Rational rat_dot(std::span<const Integer> a, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace

bool LinearSystem::satisfied_by(std::span<const Rational> x) const {
  if (x.size() != num_vars) return false;
  for (const auto& e : equalities)
    if (rat_dot(e.coeffs, x) != e.rhs) return false;
  for (const auto& q : inequalities) {
    Rational lhs = rat_dot(q.coeffs, x);
    if (q.strict ? !(lhs > q.rhs) : !(lhs >= q.rhs)) return false;
  }
  return true;
}

bool LinearSystem::satisfied_by(std::span<const Integer> x) const {
  RatVector r(x.begin(), x.end());
  return satisfied_by(r);
}

// ---------------------------------------------------------------------------
// Integer equalities

std::optional<IntegerSolution> solve_integer_system(std::size_t num_vars, const std::vector<Equality>& equalities) {
  IntegerMatrix a(equalities.size(), num_vars);
  IntVector b(equalities.size());
  for (std::size_t i = 0; i < equalities.size(); ++i) {
    if (equalities[i].coeffs.size() != num_vars)
      throw InputError("equality " + std::to_string(i) + " has the wrong number of coefficients");
    for (std::size_t j = 0; j < num_vars; ++j) a(i, j) = equalities[i].coeffs[j];
    b[i] = equalities[i].rhs;
  }

  // U A V = S, so A x = b  <=>  S y = U b  with x = V y.
  SmithForm snf = smith_normal_form(a);
  IntVector c = snf.U.apply(b);
  const std::size_t rank = snf.rank();
  IntVector y(num_vars);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank) {
      if (c[i] % snf.S(i, i) != 0) return std::nullopt;
      y[i] = c[i] / snf.S(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = snf.V.apply(y);

  IntegerMatrix kernel(num_vars - rank, num_vars);
  for (std::size_t k = rank; k < num_vars; ++k)
    for (std::size_t i = 0; i < num_vars; ++i) kernel(k - rank, i) = snf.V(i, k);
  HermiteForm h = hermite_normal_form(kernel);
  for (std::size_t r = 0; r < h.rank; ++r) {
    sol.kernel_basis.push_back(h.H.row_vector(r));
    const std::size_t pc = h.pivot_cols[r];
    Integer q = floor_div(sol.particular[pc], h.H(r, pc));
    for (std::size_t j = 0; j < num_vars; ++j) sol.particular[j] -= q * h.H(r, j);
  }
  return sol;
}

std::optional<IntegerSolution> solve_integer_system(const LinearSystem& sys) {
  sys.validate();
  return solve_integer_system(sys.num_vars, sys.equalities);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin projection

namespace {

enum class Rel { Eq, Geq, Gt };

// a . x  rel  b
struct Row {
  RatVector a;
  Rational b;
  Rel rel;
};

// levels[k] constrains variables 0..k only.
struct Projection {
  std::vector<std::vector<Row>> levels;
  bool infeasible = false;
};

bool constant_holds(const Row& r) {
  switch (r.rel) {
    case Rel::Eq:
      return r.b == 0;
    case Rel::Geq:
      return 0 >= r.b;
    case Rel::Gt:
      return 0 > r.b;
  }
  return false;
}

// Scales rows to a leading coefficient of +-1 (+1 for equalities), drops
// tautologies, merges parallel rows. Returns false on a contradiction.
bool normalize(std::vector<Row>& rows) {
  std::map<RatVector, Row> eqs;
  std::map<RatVector, Row> ineqs;
  for (auto& r : rows) {
    auto lead = std::find_if(r.a.begin(), r.a.end(), [](const Rational& v) { return v != 0; });
    if (lead == r.a.end()) {
      if (!constant_holds(r)) return false;
      continue;
    }
    Rational s = r.rel == Rel::Eq ? Rational(*lead) : Rational(abs(*lead));
    for (auto& v : r.a) v /= s;
    r.b /= s;
    if (r.rel == Rel::Eq) {
      auto [it, fresh] = eqs.try_emplace(r.a, r);
      if (!fresh && it->second.b != r.b) return false;
      continue;
    }
    auto [it, fresh] = ineqs.try_emplace(r.a, r);
    if (!fresh) {
      Row& kept = it->second;
      if (r.b > kept.b || (r.b == kept.b && r.rel == Rel::Gt)) kept = r;
    }
  }
  rows.clear();
  for (auto& [_, r] : eqs) rows.push_back(std::move(r));
  for (auto& [_, r] : ineqs) rows.push_back(std::move(r));
  return true;
}

// Projects out variable k. Equalities are used for substitution when possible.
std::vector<Row> eliminate(const std::vector<Row>& rows, std::size_t k) {
  std::vector<Row> out;
  auto pivot = std::find_if(rows.begin(), rows.end(), [k](const Row& r) { return r.rel == Rel::Eq && r.a[k] != 0; });
  if (pivot != rows.end()) {
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      if (it == pivot) continue;
      Row r = *it;
      if (r.a[k] != 0) {
        Rational f = r.a[k] / pivot->a[k];
        for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] -= f * pivot->a[j];
        r.b -= f * pivot->b;
        r.a[k] = 0;
      }
      out.push_back(std::move(r));
    }
    return out;
  }
  std::vector<const Row*> lower, upper;
  for (const auto& r : rows) {
    if (r.a[k] > 0)
      lower.push_back(&r);
    else if (r.a[k] < 0)
      upper.push_back(&r);
    else
      out.push_back(r);
  }
  for (const Row* l : lower)
    for (const Row* u : upper) {
      Rational fl = 1 / l->a[k];
      Rational fu = -1 / u->a[k];
      Row r{RatVector(l->a.size()), fl * l->b + fu * u->b,
            (l->rel == Rel::Gt || u->rel == Rel::Gt) ? Rel::Gt : Rel::Geq};
      for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] = fl * l->a[j] + fu * u->a[j];
      r.a[k] = 0;
      out.push_back(std::move(r));
    }
  return out;
}

Projection project(const LinearSystem& sys, const std::optional<Integer>& box) {
  const std::size_t n = sys.num_vars;
  std::vector<Row> rows;
  for (const auto& e : sys.equalities) rows.push_back({RatVector(e.coeffs.begin(), e.coeffs.end()), e.rhs, Rel::Eq});
  for (const auto& q : sys.inequalities)
    rows.push_back({RatVector(q.coeffs.begin(), q.coeffs.end()), q.rhs, q.strict ? Rel::Gt : Rel::Geq});
  if (box) {
    for (std::size_t j = 0; j < n; ++j) {
      RatVector lo(n), hi(n);
      lo[j] = 1;
      hi[j] = -1;
      rows.push_back({lo, Rational(-*box), Rel::Geq});
      rows.push_back({hi, Rational(-*box), Rel::Geq});
    }
  }
  Projection p;
  if (!normalize(rows)) {
    p.infeasible = true;
    return p;
  }
  p.levels.resize(n);
  for (std::size_t k = n; k-- > 0;) {
    p.levels[k] = rows;
    rows = eliminate(rows, k);
    if (!normalize(rows)) {
      p.infeasible = true;
      return p;
    }
  }
  return p;
}

// Admissible values of x_k given x_0..x_{k-1}.
struct Interval {
  std::optional<Rational> fixed;
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  bool empty = false;

  bool contains(const Rational& v) const {
    if (empty) return false;
    if (fixed) return v == *fixed;
    if (lo && (lo_strict ? !(v > *lo) : !(v >= *lo))) return false;
    if (hi && (hi_strict ? !(v < *hi) : !(v <= *hi))) return false;
    return true;
  }
};

template <class Num>
Interval bounds_at(const std::vector<Row>& rows, std::size_t k, const std::vector<Num>& prefix) {
  Interval iv;
  for (const auto& r : rows) {
    if (r.a[k] == 0) continue;
    Rational rhs = r.b;
    for (std::size_t j = 0; j < k; ++j) rhs -= r.a[j] * prefix[j];
    Rational v = rhs / r.a[k];
    if (r.rel == Rel::Eq) {
      if (iv.fixed && *iv.fixed != v) iv.empty = true;
      iv.fixed = v;
      continue;
    }
    const bool strict = r.rel == Rel::Gt;
    if (r.a[k] > 0) {
      if (!iv.lo || v > *iv.lo || (v == *iv.lo && strict)) {
        iv.lo = v;
        iv.lo_strict = strict;
      }
    } else {
      if (!iv.hi || v < *iv.hi || (v == *iv.hi && strict)) {
        iv.hi = v;
        iv.hi_strict = strict;
      }
    }
  }
  if (iv.fixed) {
    Rational f = *iv.fixed;
    Interval probe = iv;
    probe.fixed.reset();
    if (!probe.contains(f)) iv.empty = true;
  } else if (iv.lo && iv.hi) {
    if (*iv.lo > *iv.hi || (*iv.lo == *iv.hi && (iv.lo_strict || iv.hi_strict))) iv.empty = true;
  }
  return iv;
}

// Prefers 0, then the admissible value nearest to 0 (an integer when one is close).
Rational choose_value(const Interval& iv) {
  if (iv.fixed) return *iv.fixed;
  if (iv.contains(0)) return 0;
  if (iv.lo && *iv.lo >= 0) {
    Rational v = iv.lo_strict ? Rational(floor_of(*iv.lo) + 1) : *iv.lo;
    if (!iv.contains(v)) v = (*iv.lo + *iv.hi) / 2;
    return v;
  }
  Rational v = iv.hi_strict ? Rational(ceil_of(*iv.hi) - 1) : *iv.hi;
  if (!iv.contains(v)) v = (*iv.lo + *iv.hi) / 2;
  return v;
}

}  // namespace

std::optional<RatVector> rational_feasible(const LinearSystem& sys) {
  sys.validate();
  Projection p = project(sys, std::nullopt);
  if (p.infeasible) return std::nullopt;
  RatVector x;
  x.reserve(sys.num_vars);
  for (std::size_t k = 0; k < sys.num_vars; ++k) {
    Interval iv = bounds_at(p.levels[k], k, x);
    if (iv.empty) throw TheoryViolation("Fourier-Motzkin back-substitution hit an empty interval");
    x.push_back(choose_value(iv));
  }
  if (!sys.satisfied_by(x)) throw TheoryViolation("Fourier-Motzkin witness fails its own system");
  return x;
}

// ---------------------------------------------------------------------------
// Bounded lattice points

namespace {

struct LatticeWalker {
  const LinearSystem& sys;
  const Projection& proj;
  const IntegerSolution& lattice;
  const Integer& box;
  const std::function<bool(const IntVector&)>& visit;
  // pivot column -> kernel basis row
  std::vector<std::optional<std::size_t>> pivot_row;
  IntVector x;
  IntVector t;
  bool stopped = false;

  void walk(std::size_t k) {
    const std::size_t n = sys.num_vars;
    if (k == n) {
      if (!sys.satisfied_by(x)) throw TheoryViolation("lattice walk produced a non-solution");
      if (!visit(x)) stopped = true;
      return;
    }
    Interval iv = bounds_at(proj.levels[k], k, x);
    if (iv.empty) return;
    Integer lo = -box, hi = box;
    if (iv.fixed) {
      if (iv.fixed->get_den() != 1) return;
      lo = std::max<Integer>(lo, iv.fixed->get_num());
      hi = std::min<Integer>(hi, iv.fixed->get_num());
    }
    if (iv.lo) lo = std::max<Integer>(lo, iv.lo_strict ? floor_of(*iv.lo) + 1 : ceil_of(*iv.lo));
    if (iv.hi) hi = std::min<Integer>(hi, iv.hi_strict ? ceil_of(*iv.hi) - 1 : floor_of(*iv.hi));
    if (lo > hi) return;

    Integer base = lattice.particular[k];
    for (std::size_t j = 0; j < k; ++j)
      if (pivot_row[j]) base += t[*pivot_row[j]] * lattice.kernel_basis[*pivot_row[j]][k];

    if (!pivot_row[k]) {
      if (base < lo || base > hi) return;
      x.push_back(base);
      walk(k + 1);
      x.pop_back();
      return;
    }
    const std::size_t r = *pivot_row[k];
    const Integer& step = lattice.kernel_basis[r][k];
    Integer first = -floor_div(base - lo, step);  // ceil((lo - base) / step)
    Integer last = floor_div(hi - base, step);
    for (Integer s = first; s <= last && !stopped; ++s) {
      t[r] = s;
      x.push_back(base + s * step);
      walk(k + 1);
      x.pop_back();
    }
  }
};

}  // namespace

void for_each_lattice_point(const LinearSystem& sys, const Integer& box_bound,
                            const std::function<bool(const IntVector&)>& visit) {
  sys.validate();
  if (box_bound < 0) throw InputError("box bound must be nonnegative");
  auto lattice = solve_integer_system(sys.num_vars, sys.equalities);
  if (!lattice) return;
  Projection proj = project(sys, box_bound);
  if (proj.infeasible) return;

  LatticeWalker w{sys, proj, *lattice, box_bound, visit, std::vector<std::optional<std::size_t>>(sys.num_vars), {},
                  IntVector(lattice->kernel_basis.size())};
  for (std::size_t r = 0; r < lattice->kernel_basis.size(); ++r) {
    const auto& row = lattice->kernel_basis[r];
    auto pc = std::find_if(row.begin(), row.end(), [](const Integer& v) { return v != 0; }) - row.begin();
    w.pivot_row[pc] = r;
  }
  w.x.reserve(sys.num_vars);
  w.walk(0);
}

std::vector<IntVector> lattice_points_bounded(const LinearSystem& sys, const Integer& box_bound) {
  std::vector<IntVector> out;
  for_each_lattice_point(sys, box_bound, [&](const IntVector& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::optional<IntVector> first_lattice_point(const LinearSystem& sys, const Integer& box_bound) {
  std::optional<IntVector> out;
  for_each_lattice_point(sys, box_bound, [&](const IntVector& p) {
    out = p;
    return false;
  });
  return out;
}

}  // namespace toric
