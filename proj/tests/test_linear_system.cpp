#include <gtest/gtest.h>

#include "test_support.hpp"
#include "toric/errors.hpp"
#include "toric/linear_system.hpp"

using namespace toric;
using toric::testing::Rng;

namespace {

Equality eq(std::vector<long> c, long rhs) { return {to_integers(c), rhs}; }
Inequality geq(std::vector<long> c, Rational rhs, bool strict = false) { return {to_integers(c), rhs, strict}; }

}  // namespace

TEST(SolveIntegerSystem, TrivialEquation) {
  auto s = solve_integer_system(1, {eq({1}, 0)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, to_integers({0}));
  EXPECT_TRUE(s->kernel_basis.empty());
}

TEST(SolveIntegerSystem, HalfIntegerObstruction) {
  // The face-pair equalities of the cone (1,0,0),(1,2,0),(0,1,2): forces e3 = -1/2.
  EXPECT_FALSE(solve_integer_system(3, {eq({1, 0, 0}, 0), eq({1, 2, 0}, 0), eq({0, 1, 2}, -1)}));
}

TEST(SolveIntegerSystem, CanonicalParticular) {
  auto s = solve_integer_system(3, {eq({1, 0, 0}, 0), eq({0, 1, 2}, -1)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, to_integers({0, 1, -1}));
  ASSERT_EQ(s->kernel_basis.size(), 1u);
  EXPECT_EQ(s->kernel_basis[0], to_integers({0, 2, -1}));
  // brute-force cross-check over a small box
  LinearSystem sys{3, {eq({1, 0, 0}, 0), eq({0, 1, 2}, -1)}, {}};
  auto pts = toric::testing::brute_force_points(sys, 3);
  EXPECT_NE(std::find(pts.begin(), pts.end(), to_integers({0, 1, -1})), pts.end());
}

TEST(SolveIntegerSystem, NoEquationsGivesWholeLattice) {
  auto s = solve_integer_system(2, {});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->kernel_basis.size(), 2u);
  EXPECT_EQ(s->particular, to_integers({0, 0}));
}

TEST(SolveIntegerSystem, AgreesWithBoxSearch) {
  Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = rng.uniform(1, 3);
    std::size_t m = rng.uniform(1, 3);
    LinearSystem sys{n, {}, {}};
    for (std::size_t i = 0; i < m; ++i) {
      IntVector c(n);
      for (auto& v : c) v = rng.uniform(-4, 4);
      sys.equalities.push_back({c, rng.uniform(-6, 6)});
    }
    auto sol = solve_integer_system(sys);
    auto brute = toric::testing::brute_force_points(sys, 10);
    if (!sol) {
      EXPECT_TRUE(brute.empty());
      continue;
    }
    EXPECT_TRUE(sys.satisfied_by(sol->particular));
    for (const auto& k : sol->kernel_basis) {
      LinearSystem homog = sys;
      for (auto& e : homog.equalities) e.rhs = 0;
      EXPECT_TRUE(homog.satisfied_by(k));
    }
    for (const auto& x : brute) {
      IntVector d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = x[j] - sol->particular[j];
      EXPECT_TRUE(is_zero(toric::testing::reduce_by_echelon(d, sol->kernel_basis)));
    }
  }
}

TEST(RationalFeasible, Contradiction) {
  LinearSystem sys{1, {}, {geq({1}, 0), geq({-1}, 1)}};
  EXPECT_FALSE(rational_feasible(sys));
}

TEST(RationalFeasible, HalfIntegerWitness) {
  LinearSystem sys{2, {eq({1, 0}, 0), eq({0, 2}, -1)}, {}};
  auto w = rational_feasible(sys);
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[0], 0);
  EXPECT_EQ((*w)[1], toric::testing::frac(-1, 2));
}

TEST(RationalFeasible, ConeMembership) {
  // -(1,0) = a*(1,0) + b*(-1,0) with a,b >= 0
  LinearSystem sys{2, {eq({1, -1}, -1), eq({0, 0}, 0)}, {geq({1, 0}, 0), geq({0, 1}, 0)}};
  auto w = rational_feasible(sys);
  ASSERT_TRUE(w);
  EXPECT_TRUE(sys.satisfied_by(*w));
}

TEST(RationalFeasible, StrictInequalities) {
  LinearSystem open{1, {}, {geq({1}, 0, true), geq({-1}, 0)}};
  EXPECT_FALSE(rational_feasible(open));
  LinearSystem slab{1, {}, {geq({1}, 0, true), geq({-1}, -1, true)}};
  auto w = rational_feasible(slab);
  ASSERT_TRUE(w);
  EXPECT_GT((*w)[0], 0);
  EXPECT_LT((*w)[0], 1);
}

TEST(RationalFeasible, DimensionMismatch) {
  LinearSystem sys{2, {eq({1}, 0)}, {}};
  EXPECT_THROW(rational_feasible(sys), InputError);
}

TEST(RationalFeasible, AgreesWithVertexOracle) {
  Rng rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = rng.uniform(2, 3);
    LinearSystem sys{n, {}, {}};
    if (rng.uniform(0, 3) == 0) {
      IntVector c(n);
      for (auto& v : c) v = rng.uniform(-3, 3);
      sys.equalities.push_back({c, rng.uniform(-3, 3)});
    }
    std::size_t m = rng.uniform(1, 5);
    for (std::size_t i = 0; i < m; ++i) {
      IntVector c(n);
      for (auto& v : c) v = rng.uniform(-3, 3);
      sys.inequalities.push_back({c, toric::testing::frac(rng.uniform(-4, 4), rng.uniform(1, 2)), rng.uniform(0, 2) == 0});
    }
    auto w = rational_feasible(sys);
    EXPECT_EQ(w.has_value(), toric::testing::feasible_by_vertices(sys));
    if (w) {
      ++feasible;
      EXPECT_TRUE(sys.satisfied_by(*w));
    }
  }
  EXPECT_GT(feasible, 50);
}

TEST(LatticePoints, QuadrantRootSlab) {
  LinearSystem sys{2, {eq({1, 0}, -1)}, {geq({0, 1}, 0)}};
  auto pts = lattice_points_bounded(sys, 2);
  std::vector<IntVector> expect{to_integers({-1, 0}), to_integers({-1, 1}), to_integers({-1, 2})};
  EXPECT_EQ(pts, expect);
  EXPECT_EQ(pts, toric::testing::brute_force_points(sys, 2));
}

TEST(LatticePoints, InfeasibleIsEmpty) {
  LinearSystem sys{1, {}, {geq({1}, 1), geq({-1}, 1)}};
  EXPECT_TRUE(lattice_points_bounded(sys, 5).empty());
}

TEST(LatticePoints, Unconstrained) {
  LinearSystem sys{1, {}, {}};
  std::vector<IntVector> expect{to_integers({-1}), to_integers({0}), to_integers({1})};
  EXPECT_EQ(lattice_points_bounded(sys, 1), expect);
}

TEST(LatticePoints, NegativeBoundRejected) {
  LinearSystem sys{1, {}, {}};
  EXPECT_THROW(lattice_points_bounded(sys, -1), InputError);
}

TEST(LatticePoints, AgreesWithBruteForce) {
  Rng rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = rng.uniform(1, 3);
    LinearSystem sys{n, {}, {}};
    if (rng.coin()) {
      IntVector c(n);
      for (auto& v : c) v = rng.uniform(-3, 3);
      sys.equalities.push_back({c, rng.uniform(-3, 3)});
    }
    std::size_t m = rng.uniform(0, 4);
    for (std::size_t i = 0; i < m; ++i) {
      IntVector c(n);
      for (auto& v : c) v = rng.uniform(-3, 3);
      sys.inequalities.push_back({c, toric::testing::frac(rng.uniform(-5, 5), rng.uniform(1, 3)), rng.coin()});
    }
    long bound = rng.uniform(0, 4);
    EXPECT_EQ(lattice_points_bounded(sys, bound), toric::testing::brute_force_points(sys, bound));
  }
}
