#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "graphondyn/errors.hpp"
#include "graphondyn/graphop.hpp"
#include "graphondyn/random.hpp"
#include "graphondyn/symmetry.hpp"

using namespace graphondyn;

namespace {

IndexSpace four_vertex_space() {
  return IndexSpace(GeometryTag::abstract(), {{{0}}, {{1}}, {{2}}, {{3}}}, {2.0 / 9, 1.0 / 9, 4.0 / 9, 2.0 / 9}, {4});
}

const SquareMatrix kFourVertexW{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0.5}, {0, 0, 0.5, 0}};

}  // namespace

TEST(Graphop, FourVertexFibers) {
  const FiberSystem fs = graphop_from_weighted(kFourVertexW, four_vertex_space());
  EXPECT_EQ(fs.system.label(), "graphop");
  EXPECT_FALSE(fs.normalized);
  EXPECT_EQ(fs.fiber(0), (std::vector<double>{0, 1.0 / 9, 0, 0}));
  EXPECT_EQ(fs.fiber(1), (std::vector<double>{2.0 / 9, 0, 0, 0}));
  EXPECT_EQ(fs.fiber(2), (std::vector<double>{0, 0, 0, 1.0 / 9}));
  EXPECT_EQ(fs.fiber(3), (std::vector<double>{0, 0, 2.0 / 9, 0}));
}

TEST(Graphop, FourVertexDynamics) {
  const FiberSystem fs = graphop_from_weighted(kFourVertexW, four_vertex_space());
  const auto f = [](double u, double s) { return std::sin(u) + 2.0 * s; };
  const auto g = [](double u, double v) { return v - 0.5 * u; };
  const State u{0.1, 0.7, -0.4, 1.3};
  const State d = rhs(fs.system, make_model(f, g, "generic"), u);
  EXPECT_EQ(d[0], f(u[0], (1.0 / 9) * g(u[0], u[1])));
  EXPECT_EQ(d[1], f(u[1], (2.0 / 9) * g(u[1], u[0])));
  EXPECT_EQ(d[2], f(u[2], (1.0 / 9) * g(u[2], u[3])));
  EXPECT_EQ(d[3], f(u[3], (2.0 / 9) * g(u[3], u[2])));
}

TEST(Graphop, FromWeightedEdgeCases) {
  const IndexSpace s = make_uniform_space(5);
  const FiberSystem zero = graphop_from_weighted(SquareMatrix(5, 0.0), s);
  for (const auto& r : zero.system.rows()) EXPECT_TRUE(r.empty());
  const FiberSystem one = graphop_from_weighted(SquareMatrix(5, 1.0), s);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(one.fiber(i), std::vector<double>(5, 0.2));
  EXPECT_THROW(graphop_from_weighted(SquareMatrix{{0, 1}, {0.5, 0}}, make_uniform_space(2)), InvalidArgument);
  EXPECT_THROW(graphop_from_weighted(SquareMatrix(3, 0.5), s), InvalidArgument);
}

TEST(Graphop, SphericalNorthPoleFiberIsEquator) {
  const IndexSpace grid = make_sphere_grid(SphereGridOptions{300});
  std::vector<NodePoint> nodes = grid.nodes();
  std::vector<double> w = grid.weights();
  const double pole_mass = 1.0 / 301;
  for (double& m : w) m *= 1.0 - pole_mass;
  nodes.push_back({{0.0, 0.0, 1.0}});
  w.push_back(pole_mass);
  const IndexSpace s(GeometryTag::sphere2(), nodes, w, {nodes.size()});
  const FiberSystem fs = spherical_graphop(s, 0.05);
  const auto& pole = fs.system.row(s.size() - 1);
  ASSERT_FALSE(pole.empty());
  double mass = 0.0;
  for (const auto& e : pole) {
    EXPECT_LE(std::abs(s.node(e.index).coords[2]), 0.05);
    mass += e.weight;
  }
  EXPECT_NEAR(mass, 1.0, 1e-12);
  std::size_t equator = 0;
  for (const auto& p : s.nodes()) equator += p.coords[2] == 0.0;
  EXPECT_EQ(pole.size(), equator);
}

TEST(Graphop, SphericalFibersAreProbabilities) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{468});
  const FiberSystem fs = spherical_graphop(s, default_band_halfwidth(s));
  EXPECT_TRUE(fs.normalized);
  EXPECT_EQ(fs.band_halfwidth, default_band_halfwidth(s));
  EXPECT_NEAR(default_band_halfwidth(s), 1.5 * sphere_grid_spacing(s), 1e-15);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double mass = 0.0;
    for (const auto& e : fs.system.row(i)) mass += e.weight;
    EXPECT_NEAR(mass, 1.0, 1e-12);
  }
}

TEST(Graphop, DegenerateFibers) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{200});
  try {
    spherical_graphop(s, 1e-9);
    FAIL() << "expected DegenerateFiber";
  } catch (const DegenerateFiber& e) {
    EXPECT_FALSE(e.nodes().empty());
  }
  EXPECT_THROW(spherical_graphop(make_uniform_space(3), 0.1), InvalidArgument);
  EXPECT_THROW(spherical_graphop(s, 0.0), InvalidArgument);
}

TEST(Graphop, RotationAndReflectionPreserveFibers) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{240, 0, 6});
  const FiberSystem fs = spherical_graphop(s, default_band_halfwidth(s));
  for (const IndexMap& m : {sphere_z_rotation(s, 1, 6), sphere_z_reflection(s)}) {
    const auto r = check_automorphism(fs.system, m);
    EXPECT_TRUE(r.fiber_preserving) << r.fiber_discrepancy;
    EXPECT_TRUE(r.measure_preserving);
    EXPECT_NE(r.verdict, AutomorphismVerdict::neither);
  }
}

TEST(Graphop, SynchronyIsFixed) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{150});
  const FiberSystem fs = spherical_graphop(s, default_band_halfwidth(s));
  for (double v : rhs(fs.system, kuramoto_model(0, 0), State(s.size(), 0.4))) EXPECT_EQ(v, 0.0);
}

TEST(Graphop, LatitudeOnlyStatesPersist) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{160, 0, 4});
  const FiberSystem fs = spherical_graphop(s, default_band_halfwidth(s));
  State u0(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u0[i] = 3.0 * s.node(i).coords[2] + std::sin(5 * s.node(i).coords[2]);
  const std::vector<IndexMap> gens{sphere_z_rotation(s, 1, 4)};
  const Subspace sub = Subspace::fixed_set(gens, s.size());
  const auto r = invariance_audit(fs.system, kuramoto_model(0, 0.5), sub, u0, 5.0, 1e-2, 50);
  EXPECT_LE(r.max_deviation, 1e-8);
}

TEST(Graphop, EquivarianceUnderRotation) {
  const IndexSpace s = make_sphere_grid(SphereGridOptions{160, 0, 4});
  const FiberSystem fs = spherical_graphop(s, default_band_halfwidth(s));
  PhiloxStream rng(3);
  State u0(s.size());
  for (auto& x : u0) x = 6.0 * rng.uniform();
  const auto r = equivariance_audit(fs.system, kuramoto_model(0.1, 0.3), sphere_z_rotation(s, 1, 4), u0, 5.0, 1e-2, 50);
  EXPECT_LE(r.max_deviation, 1e-8);
}
