#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphondyn/discretize.hpp"
#include "graphondyn/symmetry.hpp"

namespace graphondyn {

/// Empirical measures on the circle, one per node, each made of M particles
/// (phases in radians, unwrapped). Stored node-major: particle p of node i
/// is values[i * M + p].
class MeasureState {
 public:
  MeasureState(std::size_t nodes, std::size_t particles, std::vector<double> values);
  /// Every node carries the same particle set.
  static MeasureState replicated(std::size_t nodes, std::span<const double> particles);
  /// Dirac measures (M = 1) at the given node states.
  static MeasureState dirac(std::span<const double> state);

  std::size_t nodes() const { return nodes_; }
  std::size_t particles() const { return particles_; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> node(std::size_t i) const { return {values_.data() + i * particles_, particles_}; }
  double at(std::size_t i, std::size_t p) const { return values_[i * particles_ + p]; }

  friend bool operator==(const MeasureState&, const MeasureState&) = default;

 private:
  std::size_t nodes_;
  std::size_t particles_;
  std::vector<double> values_;
};

/// Velocity of every particle:
///   d/dt u_{i,p} = sum_{(j,w) in row i} w (1/M) sum_q sin(v_{j,q} - u_{i,p}).
/// Same layout as MeasureState::values().
std::vector<double> meanfield_rhs(const CoupledSystem& system, const MeasureState& state);

struct MeasureTrajectory {
  std::vector<double> times;
  std::vector<MeasureState> states;

  std::size_t size() const { return times.size(); }
};

/// RK4 transport of the particles along the characteristics; same stepping
/// and sampling rules as dynamics::integrate.
MeasureTrajectory integrate_meanfield(const CoupledSystem& system, const MeasureState& state0, double t_end,
                                      double step = 1e-3, std::size_t sample_every = 1);

/// Node i of the result carries the particles of node phi(i).
MeasureState pullback(const IndexMap& map, const MeasureState& state);

/// Proxy metric on node-indexed measures: sum_i mu_i (1/M) sum_p
/// |sorted(a_i)_p - sorted(b_i)_p|. Order statistics make it invariant to
/// particle relabeling within a node.
double measure_distance(const IndexSpace& space, const MeasureState& a, const MeasureState& b);

/// Largest sorted-particle distance between any two nodes of one class;
/// zero iff the state is constant on each class as a measure.
double measure_cluster_spread(const Subspace& subspace, const MeasureState& state);

}  // namespace graphondyn
