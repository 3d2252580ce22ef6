#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "graphondyn/errors.hpp"
#include "graphondyn/experiments.hpp"
#include "graphondyn/random.hpp"

using namespace graphondyn;

namespace {

IndexSpace torus(std::vector<std::size_t> res) { return make_grid_space(GeometryTag::torus(res.size()), res); }

State symmetric_state(std::size_t n, std::uint64_t seed) {
  PhiloxStream rng(seed);
  State u(n);
  for (std::size_t i = 0; i < n / 2; ++i) u[i] = u[i + n / 2] = 2 * std::numbers::pi * rng.uniform();
  return u;
}

}  // namespace

TEST(Twisted, StateOnFourPointCircle) {
  const std::vector<long long> q{1};
  const State th = twisted_state(torus({4}), q);
  const double pi = std::numbers::pi;
  EXPECT_EQ(th, (State{0, pi / 2, pi, 3 * pi / 2}));
}

TEST(Twisted, StateFormula) {
  const IndexSpace s = torus({30, 30});
  const std::vector<long long> q{1, 3};
  const State th = twisted_state(s, q);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& x = s.node(i).coords;
    EXPECT_NEAR(th[i], 2 * std::numbers::pi * (x[0] + 3 * x[1]), 1e-13);
  }
  const IndexSpace c = torus({5, 4, 3});
  const std::vector<long long> ones{1, 1, 1};
  const State w = twisted_state(c, ones);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& x = c.node(i).coords;
    EXPECT_NEAR(w[i], 2 * std::numbers::pi * (x[0] + x[1] + x[2]), 1e-13);
  }
}

TEST(Twisted, StateErrors) {
  const std::vector<long long> zero{1, 0};
  EXPECT_THROW(twisted_state(torus({4, 4}), zero), InvalidArgument);
  const std::vector<long long> one{1};
  EXPECT_THROW(twisted_state(torus({4, 4}), one), InvalidArgument);
  EXPECT_THROW(twisted_state(make_uniform_space(4), one), InvalidArgument);
}

TEST(Twisted, ResidualsVanish) {
  for (long long q : {1, 2, 3}) {
    const std::vector<long long> qs{q};
    EXPECT_LE(twisted_residual(torus({30}), 0.2, qs), 1e-12);
  }
  const std::vector<long long> q2{1, 3};
  EXPECT_LE(twisted_residual(torus({30, 30}), 0.15, q2), 1e-12);
  const std::vector<long long> q3{2, 1, 1};
  EXPECT_LE(twisted_residual(torus({12, 12, 12}), 0.2, q3), 1e-12);
}

TEST(Twisted, ResidualStaysAtFloorUnderRefinement) {
  const std::vector<long long> q{2};
  for (std::size_t n : {30u, 60u, 120u, 240u}) EXPECT_LE(twisted_residual(torus({n}), 0.2, q), 1e-12);
}

TEST(Twisted, NonEquilibriumHasResidual) {
  // A generic state is not an equilibrium; keeps the residual check honest.
  const IndexSpace s = torus({30});
  const CoupledSystem sys = discretize(geodesic_kernel(s.geometry(), 0.2), s);
  State u(30);
  for (std::size_t i = 0; i < 30; ++i) u[i] = std::pow(s.node(i).coords[0], 2) * 5.0;
  double sup = 0.0;
  for (double v : rhs(sys, kuramoto_model(0, 0), u)) sup = std::max(sup, std::abs(v));
  EXPECT_GT(sup, 1e-3);
}

TEST(Ghost, ErSixteenPasses) {
  GhostOptions opt;
  opt.n = 16;
  opt.p = 0.5;
  opt.seed = 3;
  opt.u0 = symmetric_state(16, 1);
  opt.t_end = 2.0;
  opt.sample_every = 20;
  const ExperimentReport r = ghost_experiment(opt, cyclic_shift(16, 8));
  ASSERT_TRUE(r.pass.has_value());
  EXPECT_TRUE(*r.pass);
  EXPECT_EQ(*r.pass, bound_holds(r));
  EXPECT_EQ(r.norm->method, NormMethod::exact_bruteforce);
  EXPECT_EQ(r.measured.front(), 0.0);
  EXPECT_GT(r.measured.back(), 0.0);
  EXPECT_EQ(r.extra.at("limit_distance").size(), r.times.size());
}

TEST(Ghost, ExactLimitKeepsSymmetry) {
  GhostOptions opt;
  opt.n = 16;
  opt.exact_limit = true;
  opt.u0 = symmetric_state(16, 2);
  opt.t_end = 10.0;
  opt.sample_every = 100;
  const ExperimentReport r = ghost_experiment(opt, cyclic_shift(16, 8));
  EXPECT_EQ(r.norm->value, 0.0);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_LE(r.measured[k], 1e-10);
    EXPECT_EQ(r.bound[k], 0.0);
  }
  EXPECT_TRUE(*r.pass);
}

TEST(Ghost, PerturbationEntersBound) {
  GhostOptions opt;
  opt.seed = 5;
  opt.u0 = symmetric_state(16, 3);
  opt.perturbation.assign(16, 0.0);
  opt.perturbation[2] = 0.16;
  opt.sample_every = 50;
  // The bound is tight at t = 0; allow for rounding in the two differences.
  opt.slack = 1e-12;
  const ExperimentReport r = ghost_experiment(opt, cyclic_shift(16, 8));
  EXPECT_NEAR(r.parameters["d0"].get<double>(), 0.01, 1e-15);
  EXPECT_NEAR(r.bound.front(), 0.02, 1e-15);
  EXPECT_TRUE(*r.pass);
}

TEST(Ghost, LargeNIsInformational) {
  GhostOptions opt;
  opt.n = 30;
  opt.seed = 1;
  opt.u0 = symmetric_state(30, 4);
  opt.t_end = 0.5;
  opt.step = 1e-2;
  const ExperimentReport r = ghost_experiment(opt, cyclic_shift(30, 15));
  EXPECT_FALSE(r.pass.has_value());
  EXPECT_EQ(r.norm->method, NormMethod::greedy_alternation);
  EXPECT_FALSE(r.note.empty());
}

TEST(Ghost, Errors) {
  GhostOptions opt;
  opt.u0 = symmetric_state(16, 1);
  opt.u0[0] += 0.5;
  EXPECT_THROW(ghost_experiment(opt, cyclic_shift(16, 8)), InvalidArgument);
  opt.u0 = State(16, 0.0);
  EXPECT_THROW(ghost_experiment(opt, multiplication_map(16, 2)), InvalidArgument);
  EXPECT_THROW(ghost_experiment(opt, cyclic_shift(15, 1)), InvalidArgument);
  opt.p = 2.0;
  EXPECT_THROW(ghost_experiment(opt, cyclic_shift(16, 8)), InvalidArgument);
}

TEST(Continuity, IdenticalSystems) {
  const IndexSpace s = make_uniform_space(8);
  PhiloxStream rng(1);
  State u0(8);
  for (auto& x : u0) x = 6 * rng.uniform();
  const ExperimentReport r = continuity_experiment(s, Kernel::constant(0.5), Kernel::constant(0.5), u0, u0);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_EQ(r.measured[k], 0.0);
    EXPECT_EQ(r.bound[k], 0.0);
  }
  EXPECT_TRUE(*r.pass);
}

TEST(Continuity, FullVersusEmpty) {
  const IndexSpace s = make_uniform_space(10);
  PhiloxStream rng(2);
  State u0(10);
  for (auto& x : u0) x = 6 * rng.uniform();
  ContinuityOptions opt;
  opt.t_end = 1.0;
  const ExperimentReport r = continuity_experiment(s, Kernel::constant(1.0), Kernel::constant(0.0), u0, u0, opt);
  EXPECT_NEAR(r.norm->value, 1.0, 1e-15);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_NEAR(r.bound[k], 2 * r.times[k] * std::exp(2 * r.times[k]), 1e-12);
  }
  EXPECT_TRUE(*r.pass);
}

TEST(Continuity, RandomBlocks) {
  const IndexSpace s = make_grid_space(GeometryTag::interval(), std::vector<std::size_t>{12});
  const Kernel w = Kernel::block({0, 0.3, 0.6, 1}, SquareMatrix{{0.9, 0.2, 0.5}, {0.2, 0.1, 0.7}, {0.5, 0.7, 0.3}});
  const Kernel u = Kernel::block({0, 0.5, 1}, SquareMatrix{{0.4, 0.6}, {0.6, 0.8}});
  PhiloxStream rng(3);
  State u0(12), v0(12);
  for (std::size_t i = 0; i < 12; ++i) {
    u0[i] = 6 * rng.uniform();
    v0[i] = u0[i] + 0.1 * rng.uniform();
  }
  const ExperimentReport r = continuity_experiment(s, w, u, u0, v0);
  EXPECT_TRUE(*r.pass);
  EXPECT_GT(r.measured.back(), 0.0);
}

TEST(Report, VerdictRecomputation) {
  ExperimentReport r;
  r.measured = {0.0, 0.5, 1.0};
  r.bound = {0.0, 0.6, 0.9};
  EXPECT_FALSE(bound_holds(r));
  r.slack = 0.2;
  EXPECT_TRUE(bound_holds(r));
}

TEST(SphereGhost, Informational) {
  SphereGhostOptions opt;
  opt.target = 120;
  opt.t_end = 2.0;
  const ExperimentReport r = sphere_ghost_run(opt);
  EXPECT_FALSE(r.pass.has_value());
  EXPECT_EQ(r.measured.front(), 0.0);
  EXPECT_TRUE(r.bound.empty());
}
