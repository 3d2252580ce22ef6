#include "graphondyn/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphondyn/dynamics.hpp"
#include "graphondyn/errors.hpp"
#include "graphondyn/parallel.hpp"
#include "rk4.hpp"

namespace graphondyn {

namespace {

void meanfield_rhs_into(const CoupledSystem& system, std::size_t m, std::span<const double> y,
                        std::span<double> dy) {
  const std::size_t n = system.size();
  const double inv_m = 1.0 / static_cast<double>(m);
  const auto& rows = system.rows();
  parallel_for(n, 8, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t p = 0; p < m; ++p) {
        const double u = y[i * m + p];
        double s = 0.0;
        for (const auto& entry : rows[i]) {
          const double* v = y.data() + entry.index * m;
          double inner = 0.0;
          for (std::size_t q = 0; q < m; ++q) inner += std::sin(v[q] - u);
          s += entry.weight * (inv_m * inner);
        }
        dy[i * m + p] = s;
      }
    }
  });
}

std::vector<double> sorted(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

double sorted_gap(std::span<const double> a, std::span<const double> b) {
  const auto sa = sorted(a);
  const auto sb = sorted(b);
  double s = 0.0;
  for (std::size_t p = 0; p < sa.size(); ++p) s += std::abs(sa[p] - sb[p]);
  return s / static_cast<double>(sa.size());
}

}  // namespace

MeasureState::MeasureState(std::size_t nodes, std::size_t particles, std::vector<double> values)
    : nodes_(nodes), particles_(particles), values_(std::move(values)) {
  if (nodes_ == 0 || particles_ == 0) throw InvalidArgument("MeasureState: need at least one node and one particle");
  if (values_.size() != nodes_ * particles_) {
    throw InvalidArgument("MeasureState: expected " + std::to_string(nodes_ * particles_) + " particle values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("MeasureState: particle values must be finite");
  }
}

MeasureState MeasureState::replicated(std::size_t nodes, std::span<const double> particles) {
  std::vector<double> values;
  values.reserve(nodes * particles.size());
  for (std::size_t i = 0; i < nodes; ++i) values.insert(values.end(), particles.begin(), particles.end());
  return MeasureState(nodes, particles.size(), std::move(values));
}

MeasureState MeasureState::dirac(std::span<const double> state) {
  return MeasureState(state.size(), 1, std::vector<double>(state.begin(), state.end()));
}

std::vector<double> meanfield_rhs(const CoupledSystem& system, const MeasureState& state) {
  if (state.nodes() != system.size()) {
    throw InvalidArgument("meanfield_rhs: state has " + std::to_string(state.nodes()) + " nodes, system has " +
                          std::to_string(system.size()));
  }
  std::vector<double> dy(state.values().size());
  meanfield_rhs_into(system, state.particles(), state.values(), dy);
  return dy;
}

MeasureTrajectory integrate_meanfield(const CoupledSystem& system, const MeasureState& state0, double t_end,
                                      double step, std::size_t sample_every) {
  if (state0.nodes() != system.size()) {
    throw InvalidArgument("integrate_meanfield: state has " + std::to_string(state0.nodes()) +
                          " nodes, system has " + std::to_string(system.size()));
  }
  if (sample_every == 0) throw InvalidArgument("integrate_meanfield: sample_every must be at least 1");
  const std::size_t steps = step_count(t_end, step);
  const std::size_t m = state0.particles();
  MeasureTrajectory traj;
  detail::rk4_run(
      state0.values(), t_end, steps, sample_every,
      [&](std::span<const double> y, std::span<double> dy) { meanfield_rhs_into(system, m, y, dy); },
      [&](double t, const std::vector<double>& y) {
        traj.times.push_back(t);
        traj.states.emplace_back(state0.nodes(), m, y);
      });
  return traj;
}

MeasureState pullback(const IndexMap& map, const MeasureState& state) {
  if (map.size() != state.nodes()) throw InvalidArgument("pullback: map size does not match the measure state");
  const std::size_t m = state.particles();
  std::vector<double> values(state.values().size());
  for (std::size_t i = 0; i < state.nodes(); ++i) {
    const auto src = state.node(map(i));
    std::copy(src.begin(), src.end(), values.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  return MeasureState(state.nodes(), m, std::move(values));
}

double measure_distance(const IndexSpace& space, const MeasureState& a, const MeasureState& b) {
  if (a.nodes() != space.size() || b.nodes() != space.size() || a.particles() != b.particles()) {
    throw InvalidArgument("measure_distance: shape mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.nodes(); ++i) s += space.weight(i) * sorted_gap(a.node(i), b.node(i));
  return s;
}

double measure_cluster_spread(const Subspace& subspace, const MeasureState& state) {
  if (subspace.size() != state.nodes()) throw InvalidArgument("measure_cluster_spread: size mismatch");
  double spread = 0.0;
  for (std::size_t i = 0; i < state.nodes(); ++i) {
    const std::size_t root = subspace.class_of()[i];
    if (root != i) spread = std::max(spread, sorted_gap(state.node(i), state.node(root)));
  }
  return spread;
}

}  // namespace graphondyn
