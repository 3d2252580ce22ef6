#include <gtest/gtest.h>

#include <cmath>

#include "graphondyn/discretize.hpp"
#include "graphondyn/errors.hpp"
#include "graphondyn/random.hpp"

using namespace graphondyn;

namespace {

IndexSpace weighted_path_space() { return make_finite_space(std::vector<double>{0.3, 0.5, 0.2}); }

Kernel weighted_path_kernel() { return Kernel::matrix(SquareMatrix{{0, 1, 0}, {1, 0, 0.9}, {0, 0.9, 0}}); }

void expect_rel(double got, double want) { EXPECT_LE(std::abs(got - want), 1e-15 * std::abs(want)) << got; }

}  // namespace

TEST(Discretize, ConstantOneIsUniformAverage) {
  const CoupledSystem sys = discretize(Kernel::constant(1.0), make_uniform_space(7));
  for (std::size_t i = 0; i < 7; ++i) {
    ASSERT_EQ(sys.row(i).size(), 7u);
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(sys.row(i)[j].index, j);
      EXPECT_EQ(sys.row(i)[j].weight, 1.0 / 7);
    }
  }
}

TEST(Discretize, WeightedPathCoefficients) {
  const CoupledSystem sys = discretize(weighted_path_kernel(), weighted_path_space());
  ASSERT_EQ(sys.row(0).size(), 1u);
  ASSERT_EQ(sys.row(1).size(), 2u);
  ASSERT_EQ(sys.row(2).size(), 1u);
  EXPECT_EQ(sys.row(0)[0].index, 1u);
  expect_rel(sys.row(0)[0].weight, 1.0 / 2);
  EXPECT_EQ(sys.row(1)[0].index, 0u);
  expect_rel(sys.row(1)[0].weight, 3.0 / 10);
  EXPECT_EQ(sys.row(1)[1].index, 2u);
  expect_rel(sys.row(1)[1].weight, 9.0 / 50);
  EXPECT_EQ(sys.row(2)[0].index, 1u);
  expect_rel(sys.row(2)[0].weight, 9.0 / 20);
}

TEST(Discretize, ZeroKernelGivesEmptyRows) {
  const CoupledSystem sys = discretize(Kernel::constant(0.0), make_sphere_grid(SphereGridOptions{50}));
  for (const auto& r : sys.rows()) EXPECT_TRUE(r.empty());
  EXPECT_EQ(sys.nonzeros(), 0u);
}

TEST(Discretize, KeepsDiagonal) {
  const CoupledSystem sys = discretize(Kernel::constant(0.5), make_uniform_space(3));
  EXPECT_EQ(sys.dense_row(1)[1], 0.5 / 3);
}

TEST(Discretize, DetailedBalance) {
  const IndexSpace s = make_finite_space(std::vector<double>{1, 2, 3, 4, 5, 6});
  SquareMatrix w(6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) w(i, j) = 1.0 / (1.0 + static_cast<double>(i + j));
  }
  const CoupledSystem sys = discretize(Kernel::matrix(w), s);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto ri = sys.dense_row(i);
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_NEAR(ri[j] * s.weight(i), sys.dense_row(j)[i] * s.weight(j), 1e-14);
    }
  }
  EXPECT_TRUE(sys.kernel_values().is_symmetric(1e-14));
}

TEST(Discretize, GeometryMismatch) {
  EXPECT_THROW(discretize(geodesic_kernel(GeometryTag::torus(2), 0.1), make_uniform_space(4)), InvalidArgument);
  EXPECT_THROW(discretize(weighted_path_kernel(), make_uniform_space(4)), InvalidArgument);
}

TEST(Discretize, SystemValidation) {
  const IndexSpace s = make_uniform_space(2);
  EXPECT_THROW(CoupledSystem(s, {{{1, 0.5}, {0, 0.5}}, {}}, "unsorted"), InvalidArgument);
  EXPECT_THROW(CoupledSystem(s, {{{0, -0.1}}, {}}, "negative"), InvalidArgument);
  EXPECT_THROW(CoupledSystem(s, {{{0, 0.7}, {1, 0.7}}, {}}, "mass"), InvalidArgument);
  EXPECT_THROW(CoupledSystem(s, {{{2, 0.5}}, {}}, "range"), InvalidArgument);
  EXPECT_THROW(CoupledSystem(s, {{}}, "rows"), InvalidArgument);
}

TEST(Discretize, GraphSystem) {
  const CoupledSystem sys = graph_system(SquareMatrix{{0, 1, 1}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(sys.dense_row(0), (std::vector<double>{0, 1.0 / 3, 1.0 / 3}));
  EXPECT_THROW(graph_system(SquareMatrix{{0, 1}, {0, 0}}), InvalidArgument);
}

TEST(Discretize, ErExtremes) {
  const CoupledSystem empty = sample_er(4, 0.0, 1);
  for (const auto& r : empty.rows()) EXPECT_TRUE(r.empty());
  const SquareMatrix full = sample_er_adjacency(4, 1.0, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(full(i, j), i == j ? 0.0 : 1.0);
  }
  EXPECT_THROW(sample_er(4, 1.5, 1), InvalidArgument);
  EXPECT_THROW(sample_er(4, -0.5, 1), InvalidArgument);
  EXPECT_THROW(sample_er(0, 0.5, 1), InvalidArgument);
}

TEST(Discretize, ErSeedReproducible) {
  const SquareMatrix a = sample_er_adjacency(16, 0.5, 7);
  const SquareMatrix b = sample_er_adjacency(16, 0.5, 7);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.is_symmetric());
  double edges = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = i + 1; j < 16; ++j) edges += a(i, j);
  }
  EXPECT_GE(edges, 40.0);
  EXPECT_LE(edges, 80.0);
  EXPECT_NE(a, sample_er_adjacency(16, 0.5, 8));
  EXPECT_EQ(sample_er(16, 0.5, 7), sample_er(16, 0.5, 7));
}

TEST(Discretize, ErEdgeRuleIsPhilox) {
  // The documented rule: edge {i<j} iff uniform(counter i*n + j) < p.
  const SquareMatrix a = sample_er_adjacency(9, 0.3, 99);
  const Philox4x32 g(99);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) EXPECT_EQ(a(i, j), g.uniform(i * 9 + j) < 0.3 ? 1.0 : 0.0);
  }
}
