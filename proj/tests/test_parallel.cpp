#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "graphondyn/discretize.hpp"
#include "graphondyn/dynamics.hpp"
#include "graphondyn/norms.hpp"
#include "graphondyn/parallel.hpp"
#include "graphondyn/random.hpp"

using namespace graphondyn;

namespace {

struct ThreadGuard {
  std::size_t saved = thread_count();
  ~ThreadGuard() { set_thread_count(saved); }
};

}  // namespace

TEST(Parallel, CoversRangeOnce) {
  ThreadGuard guard;
  set_thread_count(4);
  std::vector<int> hits(1001, 0);
  parallel_for(hits.size(), 10, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++hits[i];
  });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, RethrowsWorkerExceptions) {
  ThreadGuard guard;
  set_thread_count(3);
  EXPECT_THROW(parallel_for(300, 1,
                            [](std::size_t b, std::size_t) {
                              if (b > 0) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, TrajectoriesIndependentOfThreadCount) {
  ThreadGuard guard;
  const CoupledSystem sys = sample_er(300, 0.4, 17);
  State u0(300);
  PhiloxStream rng(1);
  for (auto& x : u0) x = 6.0 * rng.uniform();
  set_thread_count(1);
  const Trajectory a = integrate(sys, kuramoto_model(0.3, 0.2), u0, 0.5, 1e-2);
  set_thread_count(4);
  const Trajectory b = integrate(sys, kuramoto_model(0.3, 0.2), u0, 0.5, 1e-2);
  EXPECT_EQ(a.states, b.states);
}

TEST(Parallel, ExactNormIndependentOfThreadCount) {
  ThreadGuard guard;
  const IndexSpace space = make_uniform_space(14);
  SquareMatrix d = sample_er_adjacency(14, 0.5, 2);
  for (std::size_t i = 0; i < 14; ++i) {
    for (std::size_t j = 0; j < 14; ++j) d(i, j) -= 0.5;
  }
  set_thread_count(1);
  const NormResult a = inf_to_one_norm_exact(space, d);
  set_thread_count(5);
  const NormResult b = inf_to_one_norm_exact(space, d);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.g, b.g);
}
