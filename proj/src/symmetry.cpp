#include "graphondyn/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "graphondyn/errors.hpp"
#include "graphondyn/norms.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn {

namespace {

std::size_t wrap(long long k, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

void require_torus(const IndexSpace& space, const char* who) {
  if (space.geometry().kind != Geometry::torus) {
    throw InvalidArgument(std::string(who) + ": space is not a torus grid");
  }
}

double point_distance(const GeometryTag& g, const NodePoint& a, const NodePoint& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    const double diff = (g.kind == Geometry::torus) ? circle_distance(a.coords[k], b.coords[k])
                                                     : std::abs(a.coords[k] - b.coords[k]);
    d = std::max(d, diff);
  }
  return d;
}

// Union-find with path halving; roots are the smallest index in the class.
struct Partition {
  std::vector<std::size_t> parent;
  explicit Partition(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a; else parent[a] = b;
  }
  std::vector<std::size_t> classes() {
    std::vector<std::size_t> out(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) out[i] = find(i);
    return out;
  }
};

}  // namespace

IndexMap::IndexMap(std::vector<std::size_t> targets) : targets_(std::move(targets)) {
  const std::size_t n = targets_.size();
  if (n == 0) throw InvalidArgument("IndexMap: empty map");
  std::vector<char> hit(n, 0);
  invertible_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (targets_[i] >= n) {
      throw InvalidArgument("IndexMap: target of node " + std::to_string(i) + " out of range");
    }
    if (hit[targets_[i]]) invertible_ = false;
    hit[targets_[i]] = 1;
  }
}

IndexMap IndexMap::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), 0);
  return IndexMap(std::move(t));
}

IndexMap IndexMap::inverse() const {
  if (!invertible_) throw InvalidArgument("IndexMap::inverse: map is not a permutation");
  std::vector<std::size_t> inv(size());
  for (std::size_t i = 0; i < size(); ++i) inv[targets_[i]] = i;
  return IndexMap(std::move(inv));
}

IndexMap IndexMap::compose(const IndexMap& other) const {
  if (other.size() != size()) throw InvalidArgument("IndexMap::compose: size mismatch");
  std::vector<std::size_t> t(size());
  for (std::size_t i = 0; i < size(); ++i) t[i] = targets_[other.targets_[i]];
  return IndexMap(std::move(t));
}

State pullback(const IndexMap& map, std::span<const double> state) {
  if (state.size() != map.size()) {
    throw InvalidArgument("pullback: map has " + std::to_string(map.size()) + " nodes, state " +
                          std::to_string(state.size()));
  }
  State out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state[map(i)];
  return out;
}

IndexMap cyclic_shift(std::size_t n, long long by) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = wrap(static_cast<long long>(i) + by, n);
  return IndexMap(std::move(t));
}

IndexMap reversal(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = n - 1 - i;
  return IndexMap(std::move(t));
}

IndexMap multiplication_map(std::size_t n, long long q) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = wrap(q * static_cast<long long>(i), n);
  return IndexMap(std::move(t));
}

IndexMap random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), 0);
  PhiloxStream rng(seed, 3);
  for (std::size_t i = n; i > 1; --i) std::swap(t[i - 1], t[rng.below(i)]);
  return IndexMap(std::move(t));
}

IndexMap torus_translation(const IndexSpace& space, std::span<const long long> shift) {
  require_torus(space, "torus_translation");
  if (shift.size() != space.resolution().size()) throw InvalidArgument("torus_translation: one shift per dimension");
  std::vector<std::size_t> t(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto multi = torus_multi_index(space, i);
    for (std::size_t d = 0; d < multi.size(); ++d) multi[d] += shift[d];
    t[i] = torus_node_index(space, multi);
  }
  return IndexMap(std::move(t));
}

IndexMap torus_reflection(const IndexSpace& space, const std::vector<bool>& flip) {
  require_torus(space, "torus_reflection");
  if (flip.size() != space.resolution().size()) throw InvalidArgument("torus_reflection: one flag per dimension");
  std::vector<std::size_t> t(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto multi = torus_multi_index(space, i);
    for (std::size_t d = 0; d < multi.size(); ++d) {
      if (flip[d]) multi[d] = -multi[d];
    }
    t[i] = torus_node_index(space, multi);
  }
  return IndexMap(std::move(t));
}

IndexMap torus_axis_permutation(const IndexSpace& space, std::span<const std::size_t> perm) {
  require_torus(space, "torus_axis_permutation");
  const auto& res = space.resolution();
  if (perm.size() != res.size()) throw InvalidArgument("torus_axis_permutation: one entry per dimension");
  std::vector<char> seen(res.size(), 0);
  for (std::size_t p : perm) {
    if (p >= res.size() || seen[p]) throw InvalidArgument("torus_axis_permutation: not a permutation");
    seen[p] = 1;
  }
  for (std::size_t d = 0; d < res.size(); ++d) {
    if (res[perm[d]] != res[d]) throw InvalidArgument("torus_axis_permutation: resolutions differ");
  }
  std::vector<std::size_t> t(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto multi = torus_multi_index(space, i);
    std::vector<long long> image(multi.size());
    for (std::size_t d = 0; d < multi.size(); ++d) image[d] = multi[perm[d]];
    t[i] = torus_node_index(space, image);
  }
  return IndexMap(std::move(t));
}

IndexMap torus_multiplication(const IndexSpace& space, std::span<const long long> q) {
  require_torus(space, "torus_multiplication");
  if (q.size() != space.resolution().size()) throw InvalidArgument("torus_multiplication: one factor per dimension");
  std::vector<std::size_t> t(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto multi = torus_multi_index(space, i);
    for (std::size_t d = 0; d < multi.size(); ++d) multi[d] *= q[d];
    t[i] = torus_node_index(space, multi);
  }
  return IndexMap(std::move(t));
}

IndexMap sphere_z_rotation(const IndexSpace& space, long long steps, std::size_t order) {
  const auto offsets = sphere_band_offsets(space);
  if (order == 0) throw InvalidArgument("sphere_z_rotation: order must be at least 1");
  std::vector<std::size_t> t(space.size());
  for (std::size_t b = 0; b + 1 < offsets.size(); ++b) {
    const std::size_t m = offsets[b + 1] - offsets[b];
    if (m % order != 0) {
      throw InvalidArgument("sphere_z_rotation: band " + std::to_string(b) + " has " + std::to_string(m) +
                            " nodes, not divisible by " + std::to_string(order));
    }
    const long long shift = steps * static_cast<long long>(m / order);
    for (std::size_t k = 0; k < m; ++k) {
      t[offsets[b] + k] = offsets[b] + wrap(static_cast<long long>(k) + shift, m);
    }
  }
  return IndexMap(std::move(t));
}

IndexMap sphere_z_reflection(const IndexSpace& space) {
  const auto offsets = sphere_band_offsets(space);
  const std::size_t bands = offsets.size() - 1;
  std::vector<std::size_t> t(space.size());
  for (std::size_t b = 0; b < bands; ++b) {
    const std::size_t mirror = bands - 1 - b;
    const std::size_t m = offsets[b + 1] - offsets[b];
    if (offsets[mirror + 1] - offsets[mirror] != m) {
      throw InvalidArgument("sphere_z_reflection: band grid is not mirror-symmetric");
    }
    for (std::size_t k = 0; k < m; ++k) t[offsets[b] + k] = offsets[mirror] + k;
  }
  return IndexMap(std::move(t));
}

IndexMap map_from_transform(const IndexSpace& space, const std::function<NodePoint(const NodePoint&)>& transform,
                            double tol) {
  const std::size_t n = space.size();
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodePoint image = transform(space.node(i));
    if (image.coords.size() != space.geometry().coord_dim()) {
      throw InvalidArgument("map_from_transform: transform changed the point dimension");
    }
    double best = INFINITY;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = point_distance(space.geometry(), image, space.node(j));
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best > tol) {
      throw InvalidArgument("map_from_transform: image of node " + std::to_string(i) + " is not a grid node");
    }
    t[i] = best_j;
  }
  return IndexMap(std::move(t));
}

std::string to_string(AutomorphismVerdict v) {
  switch (v) {
    case AutomorphismVerdict::graphon_automorphism:
      return "graphon_automorphism";
    case AutomorphismVerdict::graphop_automorphism:
      return "graphop_automorphism";
    case AutomorphismVerdict::measure_preserving_only:
      return "measure_preserving_only";
    case AutomorphismVerdict::neither:
      return "neither";
  }
  return "neither";
}

AutomorphismReport check_automorphism(const CoupledSystem& system, const IndexMap& map, double tol) {
  const std::size_t n = system.size();
  if (map.size() != n) {
    throw InvalidArgument("check_automorphism: map covers " + std::to_string(map.size()) + " nodes, system has " +
                          std::to_string(n));
  }
  const IndexSpace& space = system.space();
  AutomorphismReport r;

  std::vector<double> pushed(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) pushed[map(i)] += space.weight(i);
  for (std::size_t j = 0; j < n; ++j) r.mass_discrepancy = std::max(r.mass_discrepancy, std::abs(pushed[j] - space.weight(j)));
  r.measure_preserving = r.mass_discrepancy <= tol;

  const SquareMatrix k = system.kernel_values();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r.weight_discrepancy = std::max(r.weight_discrepancy, std::abs(k(map(i), map(j)) - k(i, j)));
    }
  }
  r.adjacency_preserving = r.weight_discrepancy <= tol;

  std::vector<double> fiber(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(fiber.begin(), fiber.end(), 0.0);
    for (const auto& e : system.row(i)) fiber[map(e.index)] += e.weight;
    for (const auto& e : system.row(map(i))) fiber[e.index] -= e.weight;
    for (double v : fiber) r.fiber_discrepancy = std::max(r.fiber_discrepancy, std::abs(v));
  }
  r.fiber_preserving = r.fiber_discrepancy <= tol;

  if (r.measure_preserving && r.adjacency_preserving) {
    r.verdict = AutomorphismVerdict::graphon_automorphism;
  } else if (r.fiber_preserving) {
    r.verdict = AutomorphismVerdict::graphop_automorphism;
  } else if (r.measure_preserving) {
    r.verdict = AutomorphismVerdict::measure_preserving_only;
  } else {
    r.verdict = AutomorphismVerdict::neither;
  }
  return r;
}

std::vector<std::size_t> group_orbits(std::span<const IndexMap> generators, std::size_t n, std::size_t cap) {
  for (const auto& g : generators) {
    if (g.size() != n) throw InvalidArgument("group_orbits: generator size does not match the state");
    if (!g.invertible()) throw InvalidArgument("group_orbits: generators must be invertible");
  }
  // Breadth-first closure of each orbit under the generators. Inverses are
  // not needed: on a finite set every permutation has finite order.
  std::vector<std::size_t> orbit(n, n);
  std::vector<std::size_t> queue;
  std::size_t work = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] != n) continue;
    orbit[start] = start;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& g : generators) {
        if (++work > cap) {
          throw UnsupportedGroup("group_orbits: orbit enumeration exceeded the cap of " + std::to_string(cap));
        }
        const std::size_t next = g(queue[head]);
        if (orbit[next] == n) {
          orbit[next] = start;
          queue.push_back(next);
        }
      }
    }
  }
  return orbit;
}

State project_fixed(std::span<const IndexMap> generators, std::span<const double> state, std::size_t cap) {
  const auto orbit = group_orbits(generators, state.size(), cap);
  std::vector<double> sum(state.size(), 0.0);
  std::vector<std::size_t> count(state.size(), 0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    sum[orbit[i]] += state[i];
    ++count[orbit[i]];
  }
  State out(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) out[i] = sum[orbit[i]] / static_cast<double>(count[orbit[i]]);
  return out;
}

Subspace Subspace::fixed_set(std::span<const IndexMap> generators, std::size_t n, std::size_t cap) {
  return Subspace(group_orbits(generators, n, cap), "fixed set of " + std::to_string(generators.size()) + " map(s)");
}

Subspace Subspace::image_of(const IndexMap& map) {
  // phi^* v = v o phi is constant on the fibres phi^{-1}(j).
  const std::size_t n = map.size();
  std::vector<std::size_t> first(n, n);
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (first[map(i)] == n) first[map(i)] = i;
    cls[i] = first[map(i)];
  }
  return Subspace(std::move(cls), "image of an index map");
}

Subspace Subspace::clusters(std::size_t n, const std::vector<std::vector<std::size_t>>& sets) {
  Partition p(n);
  for (const auto& set : sets) {
    for (std::size_t i : set) {
      if (i >= n) throw InvalidArgument("Subspace::clusters: node index out of range");
      p.unite(set.front(), i);
    }
  }
  return Subspace(p.classes(), "cluster subspace of " + std::to_string(sets.size()) + " set(s)");
}

State Subspace::project(const IndexSpace& space, std::span<const double> state) const {
  const std::size_t n = size();
  if (state.size() != n || space.size() != n) throw InvalidArgument("Subspace::project: size mismatch");
  std::vector<double> sum(n, 0.0), mass(n, 0.0);
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = class_of_[i];
    sum[c] += space.weight(i) * state[i];
    mass[c] += space.weight(i);
    lo[c] = std::min(lo[c], state[i]);
    hi[c] = std::max(hi[c], state[i]);
  }
  State out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = class_of_[i];
    // Classes that are already constant keep their value exactly.
    out[i] = (lo[c] == hi[c]) ? state[i] : sum[c] / mass[c];
  }
  return out;
}

double Subspace::distance(const IndexSpace& space, std::span<const double> state) const {
  return l1_distance(space, state, project(space, state));
}

AuditResult equivariance_audit(const CoupledSystem& system, const ModelFunctions& model, const IndexMap& map,
                               const State& state0, double t_end, double step, std::size_t sample_every) {
  if (map.size() != system.size()) throw InvalidArgument("equivariance_audit: map size does not match system");
  const Trajectory direct = integrate(system, model, state0, t_end, step, sample_every);
  const Trajectory mapped = integrate(system, model, pullback(map, state0), t_end, step, sample_every);
  AuditResult out;
  for (std::size_t s = 0; s < direct.size(); ++s) {
    const double dev = l1_distance(system.space(), pullback(map, direct.states[s]), mapped.states[s]);
    out.times.push_back(direct.times[s]);
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

AuditResult invariance_audit(const CoupledSystem& system, const ModelFunctions& model, const Subspace& subspace,
                             const State& state0, double t_end, double step, std::size_t sample_every) {
  if (subspace.size() != system.size()) throw InvalidArgument("invariance_audit: subspace size does not match system");
  if (state0.size() != system.size()) throw InvalidArgument("invariance_audit: state size does not match system");
  const double d0 = subspace.distance(system.space(), state0);
  if (d0 > 1e-12) {
    throw InvalidArgument("invariance_audit: initial state is " + std::to_string(d0) + " away from the subspace");
  }
  const Trajectory traj = integrate(system, model, state0, t_end, step, sample_every);
  AuditResult out;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const double dev = subspace.distance(system.space(), traj.states[s]);
    out.times.push_back(traj.times[s]);
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

}  // namespace graphondyn
