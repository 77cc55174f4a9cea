#include <gtest/gtest.h>

#include "test_support.hpp"
#include "toric/cone.hpp"
#include "toric/errors.hpp"
#include "toric/normal_form.hpp"

using namespace toric;
using toric::testing::Rng;

namespace {

std::vector<IntVector> rays_of(std::initializer_list<std::vector<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.push_back(to_integers(r));
  return out;
}

Cone quadrant(std::size_t n) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  return build_cone(n, rays);
}

const Cone& quadric() {
  static const Cone c = build_cone(2, rays_of({{1, 0}, {1, 2}}));
  return c;
}

const Cone& threefold() {
  static const Cone c = build_cone(3, rays_of({{1, 0, 0}, {1, 2, 0}, {0, 1, 2}}));
  return c;
}

std::string error_of(std::size_t rank, std::vector<IntVector> rays, bool normalize = false) {
  try {
    build_cone(rank, std::move(rays), normalize);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(BuildCone, AcceptsValidCones) {
  EXPECT_EQ(quadrant(2).ray_count(), 2u);
  EXPECT_EQ(threefold().ray_count(), 3u);
  EXPECT_TRUE(threefold().is_full_dimensional());
}

TEST(BuildCone, Rejections) {
  EXPECT_NE(error_of(2, rays_of({{1, 0}, {0, 1}, {1, 1}})).find("(1,1) is not extremal"), std::string::npos);
  EXPECT_NE(error_of(2, rays_of({{0, 0}, {0, 1}})).find("zero vector"), std::string::npos);
  EXPECT_NE(error_of(2, rays_of({{2, 4}, {0, 1}})).find("use (1,2)"), std::string::npos);
  EXPECT_NE(error_of(2, rays_of({{1, 0}, {1, 0}})).find("duplicate"), std::string::npos);
  EXPECT_NE(error_of(2, rays_of({{1, 0}, {-1, 0}})).find("not pointed"), std::string::npos);
  EXPECT_NE(error_of(2, rays_of({{1, 0, 0}})).find("length"), std::string::npos);
  EXPECT_THROW(build_cone(2, {}), InputError);
}

TEST(BuildCone, NormalizeDividesOut) {
  Cone c = build_cone(2, rays_of({{2, 4}, {0, 3}}), true);
  EXPECT_EQ(c.rays(), rays_of({{1, 2}, {0, 1}}));
  // normalizing can expose duplicates
  EXPECT_NE(error_of(2, rays_of({{2, 0}, {1, 0}}), true).find("duplicate"), std::string::npos);
}

TEST(FacetNormals, Examples) {
  EXPECT_EQ(facet_normals(quadrant(2)), rays_of({{0, 1}, {1, 0}}));
  EXPECT_EQ(facet_normals(quadric()), rays_of({{0, 1}, {2, -1}}));
  EXPECT_EQ(facet_normals(threefold()), rays_of({{0, 0, 1}, {0, 2, -1}, {4, -2, 1}}));
}

TEST(FacetNormals, RequiresFullDimension) {
  EXPECT_THROW(facet_normals(build_cone(2, rays_of({{1, 0}}))), InputError);
}

TEST(FaceLattice, Examples) {
  auto q = face_lattice(quadrant(2));
  ASSERT_EQ(q.size(), 4u);
  EXPECT_EQ(q[0], (Face{{}, 0}));
  EXPECT_EQ(q[1], (Face{{0}, 1}));
  EXPECT_EQ(q[2], (Face{{1}, 1}));
  EXPECT_EQ(q[3], (Face{{0, 1}, 2}));
  EXPECT_EQ(face_lattice(quadric()).size(), 4u);

  auto t = face_lattice(threefold());
  ASSERT_EQ(t.size(), 8u);
  std::vector<std::size_t> dims;
  for (const auto& f : t) dims.push_back(f.dim);
  EXPECT_EQ(dims, (std::vector<std::size_t>{0, 1, 1, 1, 2, 2, 2, 3}));
}

TEST(FaceLattice, QuadrantHasTwoToTheNFaces) {
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(face_lattice(quadrant(n)).size(), std::size_t{1} << n);
}

TEST(FaceLattice, DegenerateConeKeepsOriginalIndices) {
  Cone c = build_cone(3, rays_of({{1, 0, 0}, {1, 2, 0}}));
  auto faces = face_lattice(c);
  ASSERT_EQ(faces.size(), 4u);
  EXPECT_EQ(faces.back(), (Face{{0, 1}, 2}));
}

TEST(FaceLattice, NonSimplicialSquare) {
  // cone over a square: 4 rays, 4 two-dimensional faces, diagonals are not faces
  Cone c = build_cone(3, rays_of({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}));
  auto faces = face_lattice(c);
  EXPECT_EQ(faces.size(), 10u);
  EXPECT_THROW(make_face(c, {0, 2}), InputError);
  EXPECT_EQ(make_face(c, {1, 0}), (Face{{0, 1}, 2}));
  EXPECT_EQ(make_face(c, {0, 1, 2, 3}).dim, 3u);
}

TEST(FaceLattice, AgreesWithFunctionalOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng.uniform(2, 3);
    auto rays = toric::testing::random_pointed_cone(rng, n, 5);
    Cone c = build_cone(n, rays);
    auto faces = face_lattice(c);
    std::vector<std::vector<std::size_t>> expect;
    const std::size_t k = rays.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) s.push_back(i);
      if (toric::testing::is_face_by_functional(rays, s)) expect.push_back(s);
    }
    std::vector<std::vector<std::size_t>> got;
    for (const auto& f : faces) {
      got.push_back(f.rays);
      std::vector<IntVector> sub;
      for (auto i : f.rays) sub.push_back(rays[i]);
      EXPECT_EQ(f.dim, toric::testing::rank_by_minors(sub, n));
    }
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expect);
  }
}

TEST(FaceLattice, ClosedUnderIntersection) {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = rng.uniform(2, 4);
    Cone c = build_cone(n, toric::testing::random_pointed_cone(rng, n, 6));
    auto faces = face_lattice(c);
    for (const auto& a : faces)
      for (const auto& b : faces) {
        std::vector<std::size_t> meet;
        std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(), std::back_inserter(meet));
        EXPECT_TRUE(std::any_of(faces.begin(), faces.end(), [&](const Face& f) { return f.rays == meet; }));
      }
  }
}

TEST(FacetNormals, PairingProperties) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng.uniform(2, 4);
    auto rays = toric::testing::random_pointed_cone(rng, n, 6);
    Cone c = build_cone(n, rays);
    auto normals = facet_normals(c);
    std::set<std::vector<std::size_t>> facets;
    for (const auto& u : normals) {
      EXPECT_EQ(gcd_of(u), 1);
      std::vector<std::size_t> tight;
      std::vector<IntVector> tight_rays;
      for (std::size_t i = 0; i < rays.size(); ++i) {
        Integer p = dot(rays[i], u);
        EXPECT_GE(p, 0);
        if (p == 0) {
          tight.push_back(i);
          tight_rays.push_back(rays[i]);
        }
      }
      EXPECT_EQ(toric::testing::rank_by_minors(tight_rays, n), n - 1);
      EXPECT_TRUE(facets.insert(tight).second);
    }
    // every facet of the lattice shows up
    std::size_t codim_one = 0;
    for (const auto& f : face_lattice(c)) codim_one += f.dim == n - 1;
    EXPECT_EQ(codim_one, normals.size());
  }
}

TEST(SmoothFace, Examples) {
  const Cone& t = threefold();
  EXPECT_TRUE(is_smooth_face(t, Face{{}, 0}));
  EXPECT_TRUE(is_smooth_face(t, make_face(t, {1})));
  EXPECT_FALSE(is_smooth_face(t, make_face(t, {0, 1})));
  EXPECT_TRUE(is_smooth_face(t, make_face(t, {0, 2})));
  EXPECT_FALSE(is_smooth_face(t, make_face(t, {0, 1, 2})));
  EXPECT_TRUE(is_smooth_face(quadrant(3), make_face(quadrant(3), {0, 1, 2})));
}

TEST(SmoothFace, AgreesWithMinorsOracle) {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = rng.uniform(2, 4);
    auto rays = toric::testing::random_pointed_cone(rng, n, 6);
    Cone c = build_cone(n, rays);
    for (const auto& f : face_lattice(c)) {
      std::vector<IntVector> sub;
      for (auto i : f.rays) sub.push_back(rays[i]);
      bool expect = sub.empty();
      if (!sub.empty() && sub.size() == f.dim) {
        auto factors = toric::testing::invariant_factors_by_minors(IntegerMatrix::from_rows(sub, n));
        expect = factors.size() == f.dim && std::all_of(factors.begin(), factors.end(), [](auto& d) { return d == 1; });
      }
      EXPECT_EQ(is_smooth_face(c, f), expect);
    }
  }
}

TEST(SplitDegenerate, Examples) {
  auto half = split_degenerate(2, rays_of({{1, 0}}));
  EXPECT_EQ(half.torus_rank, 1u);
  EXPECT_EQ(half.induced.ambient_rank(), 1u);
  EXPECT_EQ(half.induced.rays(), rays_of({{1}}));

  auto line = split_degenerate(2, rays_of({{1, 2}}));
  EXPECT_EQ(line.torus_rank, 1u);
  EXPECT_EQ(line.sublattice_basis, (IntegerMatrix{{1, 2}}));
  EXPECT_EQ(line.induced.rays(), rays_of({{1}}));

  auto full = split_degenerate(3, threefold().rays());
  EXPECT_EQ(full.torus_rank, 0u);
  EXPECT_EQ(full.sublattice_basis, IntegerMatrix::identity(3));
  EXPECT_EQ(full.induced, threefold());

  auto torus = split_degenerate(2, {});
  EXPECT_EQ(torus.torus_rank, 2u);
  EXPECT_EQ(torus.induced.ray_count(), 0u);
  EXPECT_EQ(torus.induced.ambient_rank(), 0u);
}

TEST(SplitDegenerate, SaturatesTheSpan) {
  // span of (2,1,0),(0,1,2) meets Z^3 in a lattice containing (1,1,1)
  auto s = split_degenerate(3, rays_of({{2, 1, 0}, {0, 1, 2}}));
  EXPECT_EQ(s.torus_rank, 1u);
  std::vector<Equality> eqs;
  for (std::size_t j = 0; j < 3; ++j) eqs.push_back({s.sublattice_basis.column(j), 1});
  EXPECT_TRUE(solve_integer_system(2, eqs));
}

TEST(SplitDegenerate, RoundTrip) {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = rng.uniform(2, 4);
    std::size_t d = rng.uniform(1, static_cast<long>(n));
    auto low = toric::testing::random_pointed_cone(rng, d, d + 2);
    // embed through a random injective map Z^d -> Z^n, then take primitive images
    IntegerMatrix emb = toric::testing::random_matrix(rng, d, n, -2, 2);
    if (rank_of(emb) != d) continue;
    std::vector<IntVector> rays;
    for (const auto& r : low) {
      IntVector v(n);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) v[j] += r[i] * emb(i, j);
      rays.push_back(primitive(v));
    }
    auto s = split_degenerate(n, rays);
    EXPECT_EQ(s.torus_rank, n - d);
    EXPECT_TRUE(s.induced.is_full_dimensional());
    EXPECT_EQ(embed_rays(s), rays);
    // the sublattice is saturated: its invariant factors are all 1
    auto factors = toric::testing::invariant_factors_by_minors(s.sublattice_basis);
    EXPECT_TRUE(std::all_of(factors.begin(), factors.end(), [](auto& x) { return x == 1; }));
  }
}
