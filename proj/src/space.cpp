#include "graphondyn/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "graphondyn/errors.hpp"

namespace graphondyn {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kUnitNormTol = 1e-12;

void validate_point(const GeometryTag& g, const NodePoint& p, std::size_t i) {
  if (p.coords.size() != g.coord_dim()) {
    throw InvalidArgument("node " + std::to_string(i) + " has " + std::to_string(p.coords.size()) +
                          " coordinates, geometry " + g.name() + " needs " +
                          std::to_string(g.coord_dim()));
  }
  for (double c : p.coords) {
    if (!std::isfinite(c)) throw InvalidArgument("node " + std::to_string(i) + ": non-finite coordinate");
  }
  switch (g.kind) {
    case Geometry::abstract:
      break;
    case Geometry::interval:
    case Geometry::torus:
      for (double c : p.coords) {
        if (c < 0.0 || c >= 1.0) {
          throw InvalidArgument("node " + std::to_string(i) + ": coordinate outside [0,1)");
        }
      }
      break;
    case Geometry::sphere2: {
      const double r = std::sqrt(p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1] +
                                 p.coords[2] * p.coords[2]);
      if (std::abs(r - 1.0) > kUnitNormTol) {
        throw InvalidArgument("node " + std::to_string(i) + ": sphere point is not unit length");
      }
      break;
    }
  }
}

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace

std::size_t GeometryTag::coord_dim() const {
  switch (kind) {
    case Geometry::abstract:
    case Geometry::interval:
      return 1;
    case Geometry::torus:
      return dim;
    case Geometry::sphere2:
      return 3;
  }
  return 1;
}

std::string GeometryTag::name() const {
  switch (kind) {
    case Geometry::abstract:
      return "abstract";
    case Geometry::interval:
      return "interval";
    case Geometry::torus:
      return "torus(" + std::to_string(dim) + ")";
    case Geometry::sphere2:
      return "sphere2";
  }
  return "unknown";
}

IndexSpace::IndexSpace(GeometryTag geometry, std::vector<NodePoint> nodes,
                       std::vector<double> weights, std::vector<std::size_t> resolution)
    : geometry_(geometry),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      resolution_(std::move(resolution)) {
  if (geometry_.kind == Geometry::torus && geometry_.dim == 0) {
    throw InvalidArgument("torus dimension must be at least 1");
  }
  if (nodes_.empty()) throw InvalidArgument("index space needs at least one node");
  if (nodes_.size() != weights_.size()) {
    throw InvalidArgument("index space: " + std::to_string(nodes_.size()) + " nodes but " +
                          std::to_string(weights_.size()) + " weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("weight " + std::to_string(i) + " is not a positive finite number");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw InvalidArgument("weights sum to " + std::to_string(sum) + ", expected 1");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) validate_point(geometry_, nodes_[i], i);
}

IndexSpace make_finite_space(std::span<const double> weights) {
  if (weights.empty()) throw InvalidArgument("make_finite_space: empty weight list");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InvalidArgument("make_finite_space: weight " + std::to_string(i) + " is not positive");
    }
    sum += weights[i];
  }
  std::vector<double> mu(weights.begin(), weights.end());
  // Already a probability vector: keep the masses exactly as given.
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& m : mu) m /= sum;
  }
  std::vector<NodePoint> nodes(mu.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].coords = {static_cast<double>(i)};
  return IndexSpace(GeometryTag::abstract(), std::move(nodes), std::move(mu), {weights.size()});
}

IndexSpace make_uniform_space(std::size_t n) {
  if (n == 0) throw InvalidArgument("make_uniform_space: n must be at least 1");
  std::vector<NodePoint> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i].coords = {static_cast<double>(i)};
  return IndexSpace(GeometryTag::abstract(), std::move(nodes), uniform_weights(n), {n});
}

IndexSpace make_grid_space(GeometryTag geometry, std::span<const std::size_t> resolution) {
  if (resolution.empty()) throw InvalidArgument("make_grid_space: empty resolution");
  // A zero band count on the sphere means "choose automatically".
  for (std::size_t k = 0; k < resolution.size(); ++k) {
    if (resolution[k] == 0 && !(geometry.kind == Geometry::sphere2 && k == 1)) {
      throw InvalidArgument("make_grid_space: resolution entries must be at least 1");
    }
  }
  switch (geometry.kind) {
    case Geometry::abstract:
      return make_uniform_space(resolution[0]);
    case Geometry::interval: {
      const std::size_t n = resolution[0];
      std::vector<NodePoint> nodes(n);
      for (std::size_t k = 0; k < n; ++k) {
        nodes[k].coords = {(static_cast<double>(k) + 0.5) / static_cast<double>(n)};
      }
      return IndexSpace(geometry, std::move(nodes), uniform_weights(n), {n});
    }
    case Geometry::torus: {
      if (resolution.size() != geometry.dim) {
        throw InvalidArgument("make_grid_space: torus(" + std::to_string(geometry.dim) + ") needs " +
                              std::to_string(geometry.dim) + " resolution entries");
      }
      std::size_t total = 1;
      for (std::size_t r : resolution) total *= r;
      std::vector<NodePoint> nodes(total);
      std::vector<std::size_t> idx(geometry.dim, 0);
      for (std::size_t node = 0; node < total; ++node) {
        auto& c = nodes[node].coords;
        c.resize(geometry.dim);
        for (std::size_t d = 0; d < geometry.dim; ++d) {
          c[d] = static_cast<double>(idx[d]) / static_cast<double>(resolution[d]);
        }
        for (std::size_t d = geometry.dim; d-- > 0;) {
          if (++idx[d] < resolution[d]) break;
          idx[d] = 0;
        }
      }
      return IndexSpace(geometry, std::move(nodes), uniform_weights(total),
                        {resolution.begin(), resolution.end()});
    }
    case Geometry::sphere2: {
      SphereGridOptions opt;
      opt.target = resolution[0];
      if (resolution.size() > 1) opt.bands = resolution[1];
      if (resolution.size() > 2) opt.order = resolution[2];
      return make_sphere_grid(opt);
    }
  }
  throw InvalidArgument("make_grid_space: unknown geometry");
}

std::vector<std::size_t> sphere_band_counts(const SphereGridOptions& options) {
  if (options.target == 0 || options.order == 0) {
    throw InvalidArgument("sphere grid: target and order must be at least 1");
  }
  if (options.target % options.order != 0) {
    throw InvalidArgument("sphere grid: target must be a multiple of the rotation order");
  }
  std::size_t bands = options.bands;
  if (bands == 0) {
    const double ideal = std::sqrt(std::numbers::pi * static_cast<double>(options.target) / 4.0);
    bands = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(ideal)));
    if (bands % 2 == 0) {
      bands = (ideal > static_cast<double>(bands)) ? bands + 1 : bands - 1;
    }
    bands = std::max<std::size_t>(1, bands);
  }
  const std::size_t units = options.target / options.order;
  if (units < bands) {
    throw InvalidArgument("sphere grid: too few nodes for " + std::to_string(bands) + " bands");
  }

  // Mirror bands b and bands-1-b are allocated together so the grid stays
  // symmetric under z -> -z; an odd band count leaves one equatorial band.
  std::vector<double> sines(bands);
  double sine_sum = 0.0;
  for (std::size_t b = 0; b < bands; ++b) {
    sines[b] = std::sin(std::numbers::pi * (static_cast<double>(b) + 0.5) / static_cast<double>(bands));
    sine_sum += sines[b];
  }
  struct Group {
    std::size_t band;
    std::size_t multiplicity;
    double ideal;
    std::size_t alloc;
  };
  std::vector<Group> groups;
  for (std::size_t b = 0; b < (bands + 1) / 2; ++b) {
    const std::size_t mult = (2 * b + 1 == bands) ? 1 : 2;
    const double ideal = static_cast<double>(units) * sines[b] / sine_sum;
    groups.push_back({b, mult, ideal, std::max<std::size_t>(1, static_cast<std::size_t>(ideal))});
  }
  auto total = [&] {
    std::size_t s = 0;
    for (const auto& g : groups) s += g.multiplicity * g.alloc;
    return s;
  };
  std::vector<std::size_t> counts(bands, 0);
  std::size_t now = total();
  while (now < units) {
    Group* best = nullptr;
    for (auto& g : groups) {
      if (g.multiplicity > units - now) continue;
      if (!best || g.ideal - static_cast<double>(g.alloc) > best->ideal - static_cast<double>(best->alloc)) {
        best = &g;
      }
    }
    if (!best) break;
    ++best->alloc;
    now = total();
  }
  while (now > units) {
    Group* best = nullptr;
    for (auto& g : groups) {
      if (g.alloc <= 1 || g.multiplicity > now - units) continue;
      if (!best || g.ideal - static_cast<double>(g.alloc) < best->ideal - static_cast<double>(best->alloc)) {
        best = &g;
      }
    }
    if (!best) break;
    --best->alloc;
    now = total();
  }
  for (const auto& g : groups) {
    counts[g.band] = g.alloc;
    counts[bands - 1 - g.band] = g.alloc;
  }
  // An even band count with an odd leftover cannot stay mirror-symmetric;
  // the northern band of the best-suited pair absorbs the difference.
  std::size_t sum = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (sum < units) {
    std::size_t best = 0;
    for (std::size_t b = 1; b < bands; ++b) {
      if (sines[b] > sines[best]) best = b;
    }
    counts[best] += units - sum;
  } else if (sum > units) {
    std::size_t best = 0;
    for (std::size_t b = 1; b < bands; ++b) {
      if (counts[b] > counts[best]) best = b;
    }
    counts[best] -= sum - units;
  }
  for (auto& c : counts) c *= options.order;
  return counts;
}

IndexSpace make_sphere_grid(const SphereGridOptions& options) {
  const std::vector<std::size_t> counts = sphere_band_counts(options);
  const std::size_t bands = counts.size();
  const double pi = std::numbers::pi;

  std::vector<NodePoint> nodes;
  std::vector<double> weights;
  nodes.reserve(options.target);
  weights.reserve(options.target);
  for (std::size_t b = 0; b < bands; ++b) {
    // Mirror bands reuse the northern band's trig values with z negated so
    // that the reflection z -> -z is exact in floating point.
    const std::size_t north = std::min(b, bands - 1 - b);
    const double theta = pi * (static_cast<double>(north) + 0.5) / static_cast<double>(bands);
    const bool equator = (2 * b + 1 == bands);
    const double sin_t = equator ? 1.0 : std::sin(theta);
    double cos_t = equator ? 0.0 : std::cos(theta);
    if (b != north) cos_t = -cos_t;
    const double lo = pi * static_cast<double>(north) / static_cast<double>(bands);
    const double hi = pi * static_cast<double>(north + 1) / static_cast<double>(bands);
    const double area_share = (std::cos(lo) - std::cos(hi)) / 2.0;
    const std::size_t m = counts[b];
    for (std::size_t k = 0; k < m; ++k) {
      const double phi = 2.0 * pi * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
      nodes.push_back({{sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t}});
      weights.push_back(area_share / static_cast<double>(m));
    }
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return IndexSpace(GeometryTag::sphere2(), std::move(nodes), std::move(weights), counts);
}

std::vector<std::size_t> sphere_band_offsets(const IndexSpace& space) {
  if (space.geometry().kind != Geometry::sphere2) {
    throw InvalidArgument("sphere_band_offsets: space is not a sphere grid");
  }
  std::vector<std::size_t> offsets{0};
  for (std::size_t c : space.resolution()) offsets.push_back(offsets.back() + c);
  if (offsets.back() != space.size()) {
    throw InvalidArgument("sphere_band_offsets: resolution does not describe a band grid");
  }
  return offsets;
}

std::size_t torus_node_index(const IndexSpace& space, std::span<const long long> multi) {
  const auto& res = space.resolution();
  if (space.geometry().kind != Geometry::torus || multi.size() != res.size()) {
    throw InvalidArgument("torus_node_index: space is not a matching torus grid");
  }
  std::size_t index = 0;
  for (std::size_t d = 0; d < res.size(); ++d) {
    const auto n = static_cast<long long>(res[d]);
    const long long k = ((multi[d] % n) + n) % n;
    index = index * res[d] + static_cast<std::size_t>(k);
  }
  return index;
}

std::vector<long long> torus_multi_index(const IndexSpace& space, std::size_t node) {
  const auto& res = space.resolution();
  if (space.geometry().kind != Geometry::torus) {
    throw InvalidArgument("torus_multi_index: space is not a torus grid");
  }
  std::vector<long long> multi(res.size());
  for (std::size_t d = res.size(); d-- > 0;) {
    multi[d] = static_cast<long long>(node % res[d]);
    node /= res[d];
  }
  return multi;
}

double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace graphondyn
