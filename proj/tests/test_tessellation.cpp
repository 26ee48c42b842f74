#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "spherarea/catalog.hpp"
#include "spherarea/tessellation.hpp"

namespace sa = spherarea;
using sa::kPi;
using sa::PlanarTessellation;
using sa::VertexPattern;

namespace {

std::set<std::set<int>> face_sets(const std::vector<std::vector<int>>& faces, const std::vector<int>& relabel) {
  std::set<std::set<int>> out;
  for (const auto& f : faces) {
    std::set<int> s;
    for (int v : f) s.insert(relabel[static_cast<std::size_t>(v)]);
    out.insert(s);
  }
  return out;
}

// Tries every relabelling of the vertices.
bool isomorphic_bruteforce(const PlanarTessellation& a, const PlanarTessellation& b) {
  if (a.vertex_count() != b.vertex_count() || a.face_count() != b.face_count()) return false;
  std::vector<int> id(static_cast<std::size_t>(a.vertex_count()));
  std::iota(id.begin(), id.end(), 0);
  const auto target = face_sets(b.faces(), id);
  std::vector<int> perm = id;
  do {
    if (face_sets(a.faces(), perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST(Validate, Tetrahedron) {
  const PlanarTessellation t({{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}});
  const auto r = sa::validate(t);
  EXPECT_TRUE(r.ok) << r.rule << ": " << r.detail;
  EXPECT_EQ(t.vertex_count(), 4);
  EXPECT_EQ(t.edge_count(), 6u);
  EXPECT_EQ(t.euler_characteristic(), 2);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(t.pattern_at(v), (VertexPattern{3, 3, 3}));
}

TEST(Validate, DoubledTriangleFailsFaceIntersection) {
  const auto r = sa::validate(PlanarTessellation({{0, 1, 2}, {0, 2, 1}}));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.rule, "face-intersection");
}

TEST(Validate, OpenSurfaceFailsEdgeRule) {
  const auto r = sa::validate(PlanarTessellation({{0, 1, 2}, {0, 3, 1}, {1, 3, 2}}));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.rule, "edge-two-faces");
}

TEST(Validate, DegenerateFaces) {
  EXPECT_EQ(sa::validate(PlanarTessellation({{0, 1}, {0, 1}})).rule, "face-degree");
  EXPECT_EQ(sa::validate(PlanarTessellation({{0, 1, 1}})).rule, "faces");
  EXPECT_EQ(sa::validate(PlanarTessellation({{0, 1, 7}}, 3)).rule, "faces");
}

TEST(Validate, TwoCubesSharingAVertexFailLink) {
  const auto cube = sa::generate_prism(4);
  auto faces = cube.faces();
  for (auto f : cube.faces()) {
    for (int& v : f) v = v == 0 ? 0 : v + 7;
    faces.push_back(f);
  }
  const auto r = sa::validate(PlanarTessellation(faces));
  EXPECT_FALSE(r.ok);
}

TEST(Generators, PrismCensus) {
  for (int n = 3; n <= 60; ++n) {
    const auto t = sa::generate_prism(n);
    ASSERT_TRUE(sa::validate(t).ok) << n;
    EXPECT_EQ(t.vertex_count(), 2 * n);
    const auto vc = sa::vertex_census_of(t);
    ASSERT_EQ(vc.entries.size(), 1u);
    EXPECT_EQ(vc.entries[0].first, (VertexPattern{4, 4, n}));
    EXPECT_EQ(vc.entries[0].second, 2 * n);
  }
}

TEST(Generators, AntiprismCensus) {
  for (int n = 4; n <= 60; ++n) {
    const auto t = sa::generate_antiprism(n);
    ASSERT_TRUE(sa::validate(t).ok) << n;
    const auto vc = sa::vertex_census_of(t);
    ASSERT_EQ(vc.entries.size(), 1u);
    EXPECT_EQ(vc.entries[0].first, (VertexPattern{3, 3, 3, n}));
    const auto fc = sa::face_census_of(t);
    EXPECT_EQ(fc.entries, (std::vector<std::pair<int, int>>{{3, 2 * n}, {n, 2}}));
  }
}

TEST(Generators, SmallCasesArePlatonic) {
  const PlanarTessellation octahedron({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                       {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
  EXPECT_TRUE(isomorphic_bruteforce(sa::generate_antiprism(3), octahedron));
  const auto vc = sa::vertex_census_of(sa::generate_antiprism(3));
  EXPECT_EQ(vc.entries, (std::vector<std::pair<VertexPattern, int>>{{{3, 3, 3, 3}, 6}}));
  EXPECT_EQ(sa::vertex_census_of(sa::generate_prism(4)).entries,
            (std::vector<std::pair<VertexPattern, int>>{{{4, 4, 4}, 8}}));
  EXPECT_THROW(sa::generate_prism(2), sa::DomainError);
  EXPECT_THROW(sa::generate_antiprism(2), sa::DomainError);
}

TEST(Generators, DualAndCapping) {
  const auto ico = sa::detail::icosahedron();
  ASSERT_TRUE(sa::validate(ico).ok);
  EXPECT_EQ(sa::vertex_census_of(ico).entries, (std::vector<std::pair<VertexPattern, int>>{{{3, 3, 3, 3, 3}, 12}}));
  const auto dodeca = sa::dual_of(ico);
  const auto r = sa::validate(dodeca);
  ASSERT_TRUE(r.ok) << r.rule << ": " << r.detail;
  EXPECT_EQ(sa::vertex_census_of(dodeca).entries, (std::vector<std::pair<VertexPattern, int>>{{{5, 5, 5}, 20}}));
  // The dual of the cube is an octahedron.
  EXPECT_TRUE(isomorphic_bruteforce(sa::dual_of(sa::generate_prism(4)), sa::generate_antiprism(3)));
}

TEST(Census, HandshakeViolations) {
  auto cube = *sa::find_solid("cube");
  EXPECT_TRUE(sa::census_violations(cube).empty());
  cube.vertex_census.entries[0].second = 7;
  EXPECT_FALSE(sa::census_violations(cube).empty());
  auto j16 = *sa::find_solid("J16");
  j16.face_census.entries = {{3, 10}, {4, 6}};
  EXPECT_FALSE(sa::census_violations(j16).empty());
}

TEST(GraphCritical, TakesTheMinimumOverPatterns) {
  const auto g = sa::graph_a_c(*sa::find_solid("J16"));
  EXPECT_NEAR(g.a_c, kPi / 3, 1e-10);
  ASSERT_EQ(g.argmin.size(), 1u);
  EXPECT_EQ(g.argmin[0], (VertexPattern{3, 3, 4, 4}));
  const auto j3 = sa::graph_a_c(*sa::find_solid("J3"));
  EXPECT_EQ(j3.argmin.size(), 2u);
}

TEST(Area, TilingsCoverTheSphere) {
  for (const char* name : {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"}) {
    EXPECT_NEAR(sa::critical_area(*sa::find_solid(name)), 4 * kPi, 1e-9) << name;
  }
  const auto cube = *sa::find_solid("cube");
  EXPECT_NEAR(sa::total_defect_at(cube, std::acos(1.0 / 3.0)), 0.0, 1e-12);
  EXPECT_THROW(sa::area_at(cube, 0.0), sa::DomainError);
  EXPECT_THROW(sa::area_at(cube, kPi / 2 + 1e-6), sa::DomainError);
}

TEST(Area, GaussBonnetOnEveryBuiltinSolid) {
  auto solids = sa::builtin_catalog();
  for (int n : {3, 7, 41, 60}) {
    solids.push_back(*sa::find_solid("prism:" + std::to_string(n)));
    solids.push_back(*sa::find_solid("antiprism:" + std::to_string(n)));
  }
  for (const auto& s : solids) {
    ASSERT_TRUE(sa::census_violations(s).empty()) << s.name;
    const double bound = sa::side_bound(s);
    for (int k = 1; k <= 20; ++k) {
      EXPECT_LT(sa::gauss_bonnet_residual(s, bound * (k / 20.0)), 1e-9) << s.name << " " << k;
    }
  }
}

TEST(Area, GaussBonnetSpotChecks) {
  EXPECT_LT(sa::gauss_bonnet_residual(*sa::find_solid("J16"), 0.5), 1e-9);
  const auto gamma = *sa::find_solid("Gamma");
  EXPECT_LT(sa::gauss_bonnet_residual(gamma, sa::graph_a_c(gamma).a_c), 1e-9);
}

TEST(Tiling, PositiveVerdicts) {
  for (const char* name : {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron", "J1", "J3", "J6",
                           "J11", "J19", "J27", "J34", "J37", "J62", "J63", "J72", "J76", "J80", "J83",
                           "cuboctahedron", "snub-dodecahedron"}) {
    const auto v = sa::is_spherical_tiling(*sa::find_solid(name));
    EXPECT_TRUE(v.tiling) << name << ": " << v.reason;
  }
  EXPECT_NEAR(*sa::is_spherical_tiling(*sa::find_solid("J11")).shared_a_c, std::atan(2.0), 1e-10);
}

TEST(Tiling, PrismsAndAntiprisms) {
  for (int n = 3; n <= 60; ++n) {
    EXPECT_TRUE(sa::is_spherical_tiling(*sa::find_solid("prism:" + std::to_string(n))).tiling) << n;
    EXPECT_TRUE(sa::is_spherical_tiling(*sa::find_solid("antiprism:" + std::to_string(n))).tiling) << n;
  }
}

TEST(Tiling, NegativeVerdictsCarryWitness) {
  const std::vector<std::pair<std::string, VertexPattern>> cases = {
      {"J2", {3, 3, 5}}, {"J4", {3, 4, 8}}, {"J5", {3, 4, 10}}};
  for (const auto& [name, pattern] : cases) {
    const auto v = sa::is_spherical_tiling(*sa::find_solid(name));
    EXPECT_FALSE(v.tiling) << name;
    const auto row = std::find_if(v.witness.begin(), v.witness.end(), [&](const auto& r) { return r.pattern == pattern; });
    ASSERT_NE(row, v.witness.end());
    EXPECT_GT(row->defect, 0.0);
  }
  EXPECT_FALSE(sa::is_spherical_tiling(*sa::find_solid("J16")).tiling);
  EXPECT_FALSE(sa::is_spherical_tiling(*sa::find_solid("Gamma")).tiling);
}

TEST(Antiprism, CoordinatesRealiseTheTiling) {
  for (int n = 4; n <= 41; ++n) {
    const auto g = sa::antiprism_coordinates(n);
    const double first = sa::great_circle_distance(g.points[static_cast<std::size_t>(g.edges[0].first)],
                                                   g.points[static_cast<std::size_t>(g.edges[0].second)]);
    for (const auto& [i, j] : g.edges) {
      const double d = sa::great_circle_distance(g.points[static_cast<std::size_t>(i)], g.points[static_cast<std::size_t>(j)]);
      EXPECT_NEAR(d, first, 1e-10) << n;
    }
    for (int i = 0; i < 2 * n; ++i) EXPECT_NEAR(sa::antiprism_vertex_total_angle(g, i), 2 * kPi, 1e-10) << n;
    EXPECT_NEAR(first, sa::critical_side_length({3, 3, 3, n}).a_c, 1e-10) << n;
  }
  const auto g5 = sa::antiprism_coordinates(5);
  EXPECT_NEAR(sa::great_circle_distance(g5.points[0], g5.points[1]), std::atan(2.0), 1e-10);
  EXPECT_THROW(sa::antiprism_coordinates(3), sa::DomainError);
}
