#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphondyn/discretize.hpp"
#include "graphondyn/dynamics.hpp"

namespace graphondyn {

/// Self-map of node indices, phi(i) = targets[i]. Need not be invertible.
class IndexMap {
 public:
  explicit IndexMap(std::vector<std::size_t> targets);
  static IndexMap identity(std::size_t n);

  std::size_t size() const { return targets_.size(); }
  std::size_t operator()(std::size_t i) const { return targets_[i]; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  bool invertible() const { return invertible_; }

  IndexMap inverse() const;
  /// (this o other)(i) = this(other(i)).
  IndexMap compose(const IndexMap& other) const;

  friend bool operator==(const IndexMap& a, const IndexMap& b) { return a.targets_ == b.targets_; }

 private:
  std::vector<std::size_t> targets_;
  bool invertible_ = false;
};

/// (phi^* u)_i = u_{phi(i)}.
State pullback(const IndexMap& map, std::span<const double> state);

// Map constructors. Grid maps act on index arithmetic, so they are exact.
IndexMap cyclic_shift(std::size_t n, long long by);
/// i -> n - 1 - i; on a midpoint interval grid this is x -> 1 - x.
IndexMap reversal(std::size_t n);
/// i -> q i mod n; on a lattice {k/n} this is x -> q x mod 1.
IndexMap multiplication_map(std::size_t n, long long q);
IndexMap random_permutation(std::size_t n, std::uint64_t seed);
/// Translation of a torus grid by shift[d] lattice steps in dimension d.
IndexMap torus_translation(const IndexSpace& space, std::span<const long long> shift);
/// x_d -> -x_d for every d with flip[d] set.
IndexMap torus_reflection(const IndexSpace& space, const std::vector<bool>& flip);
/// Coordinate permutation x -> (x_{perm[0]}, ..., x_{perm[d-1]}); needs equal resolutions.
IndexMap torus_axis_permutation(const IndexSpace& space, std::span<const std::size_t> perm);
/// x -> (q_1 x_1 mod 1, ..., q_d x_d mod 1).
IndexMap torus_multiplication(const IndexSpace& space, std::span<const long long> q);
/// Rotation about the z-axis by 2 pi * steps / order on a band sphere grid;
/// every band count must be divisible by `order`.
IndexMap sphere_z_rotation(const IndexSpace& space, long long steps, std::size_t order);
/// z -> -z on a mirror-symmetric band sphere grid.
IndexMap sphere_z_reflection(const IndexSpace& space);
/// Node-matching map for a coordinate transform: phi(i) is the node at
/// transform(x_i), matched within `tol` (wrap-around distance on tori).
/// Throws InvalidArgument if the transform does not preserve the grid.
IndexMap map_from_transform(const IndexSpace& space, const std::function<NodePoint(const NodePoint&)>& transform,
                            double tol = 1e-9);

enum class AutomorphismVerdict { graphon_automorphism, graphop_automorphism, measure_preserving_only, neither };
std::string to_string(AutomorphismVerdict v);

struct AutomorphismReport {
  bool measure_preserving = false;
  double mass_discrepancy = 0.0;  // max_j |(phi_# mu)_j - mu_j|
  bool adjacency_preserving = false;
  double weight_discrepancy = 0.0;  // max_ij |K(phi i, phi j) - K(i, j)|, K = w / mu
  bool fiber_preserving = false;
  double fiber_discrepancy = 0.0;  // max_i |phi_# nu_i - nu_{phi i}|_inf
  AutomorphismVerdict verdict = AutomorphismVerdict::neither;
};

/// Checks phi against (A1) measure preservation and (A2) kernel
/// preservation, and the graphop condition phi_# nu_i = nu_{phi(i)}.
/// The verdict is graphon_automorphism when A1 and A2 hold, else
/// graphop_automorphism when the fibers are preserved, else
/// measure_preserving_only, else neither.
AutomorphismReport check_automorphism(const CoupledSystem& system, const IndexMap& map, double tol = 1e-12);

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

/// Orbits of the group generated by invertible maps: orbit[i] is the
/// smallest node index in i's orbit. Throws UnsupportedGroup when the work
/// (orbit elements times generators) exceeds `cap`.
std::vector<std::size_t> group_orbits(std::span<const IndexMap> generators, std::size_t n,
                                      std::size_t cap = kDefaultOrbitCap);

/// Replaces each value by the plain mean over its orbit; the result is
/// fixed by every generator's pullback.
State project_fixed(std::span<const IndexMap> generators, std::span<const double> state,
                    std::size_t cap = kDefaultOrbitCap);

/// A linear subspace of states constant on the classes of a node partition.
/// Covers fixed sets of permutation groups (orbits), images phi^*(.) of
/// index maps (fibers of phi), and cluster subspaces.
class Subspace {
 public:
  static Subspace fixed_set(std::span<const IndexMap> generators, std::size_t n,
                            std::size_t cap = kDefaultOrbitCap);
  static Subspace image_of(const IndexMap& map);
  /// States constant on each listed node set (overlapping sets merge).
  static Subspace clusters(std::size_t n, const std::vector<std::vector<std::size_t>>& sets);

  std::size_t size() const { return class_of_.size(); }
  /// class_of()[i] is the smallest node index in i's class.
  const std::vector<std::size_t>& class_of() const { return class_of_; }
  const std::string& description() const { return description_; }

  /// Replaces each value by the mu-weighted mean of its class.
  State project(const IndexSpace& space, std::span<const double> state) const;
  /// Weighted L1 distance from the state to its projection.
  double distance(const IndexSpace& space, std::span<const double> state) const;

 private:
  Subspace(std::vector<std::size_t> class_of, std::string description)
      : class_of_(std::move(class_of)), description_(std::move(description)) {}
  std::vector<std::size_t> class_of_;
  std::string description_;
};

struct AuditResult {
  double max_deviation = 0.0;
  std::vector<double> times;
  std::vector<double> deviations;
};

/// max_t || phi^*(Phi_t u0) - Phi_t(phi^* u0) ||_1 over the sampled times.
AuditResult equivariance_audit(const CoupledSystem& system, const ModelFunctions& model, const IndexMap& map,
                               const State& state0, double t_end, double step, std::size_t sample_every = 1);

/// max_t distance(Phi_t u0, subspace). u0 must lie within 1e-12 of it.
AuditResult invariance_audit(const CoupledSystem& system, const ModelFunctions& model, const Subspace& subspace,
                             const State& state0, double t_end, double step, std::size_t sample_every = 1);

}  // namespace graphondyn
