#include <gtest/gtest.h>

#include "test_support.hpp"
#include "toric/errors.hpp"
#include "toric/strata.hpp"

using namespace toric;
using toric::testing::Rng;

namespace {

std::vector<IntVector> rays_of(std::initializer_list<std::vector<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.push_back(to_integers(r));
  return out;
}

std::vector<std::size_t> dims(const StratificationReport& r) {
  std::vector<std::size_t> out;
  for (const auto& s : r.strata) out.push_back(s.dim);
  return out;
}

// Smooth iff the rays are independent with all maximal minors coprime.
bool smooth_by_minors(const std::vector<IntVector>& rays, const std::vector<std::size_t>& face, std::size_t n) {
  if (face.empty()) return true;
  IntegerMatrix m(face.size(), n);
  for (std::size_t i = 0; i < face.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rays[face[i]][j];
  auto f = toric::testing::invariant_factors_by_minors(m);
  if (f.size() != face.size()) return false;
  return std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; });
}

}  // namespace

TEST(Stratify, Quadrant) {
  auto r = stratify(2, rays_of({{1, 0}, {0, 1}}));
  ASSERT_EQ(r.strata.size(), 1u);
  EXPECT_EQ(r.strata[0].dim, 2u);
  EXPECT_TRUE(r.strata[0].principal);
  EXPECT_TRUE(r.strata[0].smooth);
  EXPECT_EQ(r.strata[0].faces.size(), 4u);
  EXPECT_TRUE(r.closure.empty());
  EXPECT_EQ(r.checks.connections, "confirmed");
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Stratify, QuadricCone) {
  auto r = stratify(2, rays_of({{1, 0}, {1, 2}}));
  EXPECT_EQ(r.class_group, FgAbGroup(0, to_integers({2})));
  ASSERT_EQ(dims(r), (std::vector<std::size_t>{2, 0}));
  EXPECT_TRUE(r.strata[0].principal);
  EXPECT_EQ(r.strata[0].faces, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.strata[1].faces, (std::vector<std::size_t>{3}));
  EXPECT_FALSE(r.strata[1].smooth);
  EXPECT_EQ(r.closure, (std::vector<ClosureEdge>{{1, 0}}));
  EXPECT_EQ(r.checks.connections, "confirmed");
}

TEST(Stratify, Threefold) {
  auto r = stratify(3, rays_of({{1, 0, 0}, {1, 2, 0}, {0, 1, 2}}));
  EXPECT_EQ(r.class_group, FgAbGroup(0, to_integers({4})));
  ASSERT_EQ(dims(r), (std::vector<std::size_t>{3, 1, 0}));
  EXPECT_EQ(subgroup_structure(r.strata[0].subgroup), FgAbGroup(0, to_integers({4})));
  EXPECT_EQ(subgroup_structure(r.strata[1].subgroup), FgAbGroup(0, to_integers({2})));
  EXPECT_TRUE(r.strata[2].subgroup.generators().empty() ||
              subgroup_structure(r.strata[2].subgroup).is_trivial());
  EXPECT_EQ(r.closure, (std::vector<ClosureEdge>{{1, 0}, {2, 1}}));
  EXPECT_EQ(r.checks.connections, "confirmed");
  EXPECT_TRUE(r.checks.luna_agrees);
  EXPECT_TRUE(r.checks.bridge_verified);
  EXPECT_TRUE(r.checks.principal_is_smooth_locus);
  EXPECT_EQ(r.checks.semigroup_verified, 8u);
}

TEST(Stratify, DegenerateInputAddsTorus) {
  auto q = stratify(3, rays_of({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(q.torus_rank, 1u);
  EXPECT_EQ(dims(q), (std::vector<std::size_t>{3}));

  auto a1 = stratify(3, rays_of({{1, 0, 0}, {1, 2, 0}}));
  EXPECT_EQ(a1.torus_rank, 1u);
  EXPECT_EQ(dims(a1), (std::vector<std::size_t>{3, 1}));

  auto skew = stratify(3, rays_of({{1, 1, 1}, {1, 3, 5}}));
  EXPECT_EQ(skew.torus_rank, 1u);
  EXPECT_EQ(skew.cone.ambient_rank(), 2u);

  auto torus = stratify(2, {});
  EXPECT_EQ(torus.torus_rank, 2u);
  ASSERT_EQ(dims(torus), (std::vector<std::size_t>{2}));
  EXPECT_TRUE(torus.strata[0].principal);
}

TEST(Stratify, RejectsBadInput) {
  EXPECT_THROW(stratify(2, rays_of({{2, 0}, {0, 1}})), InputError);
  EXPECT_NO_THROW(stratify(2, rays_of({{2, 0}, {0, 1}}), StratifyOptions{std::nullopt, 16, false, true}));
  EXPECT_THROW(stratify(2, rays_of({{1, 0}, {-1, 0}})), InputError);
  EXPECT_THROW(stratify(2, rays_of({{1, 0}}), StratifyOptions{Integer(0), 16, false, false}), InputError);
  EXPECT_THROW(stratify(2, rays_of({{1, 0}}), StratifyOptions{std::nullopt, 0, false, false}), InputError);
}

TEST(Stratify, TinyBoxLeavesWarnings) {
  StratifyOptions opt;
  opt.box_bound = 1;
  opt.strict = true;
  auto r = stratify(2, rays_of({{1, 0}, {1, 3}}), opt);
  EXPECT_GT(r.checks.connection_inconclusive, 0u);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_TRUE(r.strict_failure());
  EXPECT_NE(r.checks.connections, "confirmed");
}

TEST(StratifyProperties, Randomized) {
  Rng rng(97);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng.uniform(2, 4);
    auto rays = toric::testing::random_pointed_cone(rng, n, 6);
    auto r = stratify(n, rays);
    EXPECT_TRUE(r.checks.luna_agrees);
    EXPECT_TRUE(r.checks.bridge_verified);

    std::size_t principal_count = 0;
    for (std::size_t s = 0; s < r.strata.size(); ++s) {
      principal_count += r.strata[s].principal;
      for (auto fi : r.strata[s].faces) {
        EXPECT_EQ(r.faces[fi].stratum, s);
        EXPECT_EQ(r.strata[s].principal, smooth_by_minors(r.cone.rays(), r.faces[fi].data.face.rays, n));
        EXPECT_LE(r.faces[fi].data.orbit_dim, r.strata[s].dim);
      }
    }
    EXPECT_EQ(principal_count, 1u);
    EXPECT_TRUE(r.strata[0].principal);
    EXPECT_EQ(r.strata[0].dim, n);

    // The closure edges generate exactly subgroup containment.
    const std::size_t k = r.strata.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) reach[i][i] = true;
    for (const auto& e : r.closure) {
      reach[e.lower][e.upper] = true;
      EXPECT_LT(r.strata[e.lower].dim, r.strata[e.upper].dim);
    }
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (reach[i][m] && reach[m][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        EXPECT_EQ(reach[i][j], subgroup_leq(r.strata[i].subgroup, r.strata[j].subgroup));
  }
}
