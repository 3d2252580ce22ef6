#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace graphondyn {

enum class Geometry { abstract, interval, torus, sphere2 };

/// Geometry of an index space. `dim` is only meaningful for the torus.
struct GeometryTag {
  Geometry kind = Geometry::abstract;
  std::size_t dim = 1;

  static GeometryTag abstract() { return {Geometry::abstract, 1}; }
  static GeometryTag interval() { return {Geometry::interval, 1}; }
  static GeometryTag torus(std::size_t d) { return {Geometry::torus, d}; }
  static GeometryTag sphere2() { return {Geometry::sphere2, 2}; }

  /// Number of coordinates a NodePoint carries in this geometry.
  std::size_t coord_dim() const;
  std::string name() const;

  friend bool operator==(const GeometryTag&, const GeometryTag&) = default;
};

/// A point of the index space. Abstract spaces store the node index as the
/// single coordinate.
struct NodePoint {
  std::vector<double> coords;

  friend bool operator==(const NodePoint&, const NodePoint&) = default;
};

/// Finite probability space J = (Omega, mu) with coordinates in a model
/// manifold. Immutable after construction.
///
/// `resolution` records how a grid was built: per-dimension counts for
/// interval and torus grids, per-band node counts for sphere grids, and
/// {n} for abstract spaces.
class IndexSpace {
 public:
  IndexSpace(GeometryTag geometry, std::vector<NodePoint> nodes, std::vector<double> weights,
             std::vector<std::size_t> resolution);

  std::size_t size() const { return nodes_.size(); }
  const GeometryTag& geometry() const { return geometry_; }
  const std::vector<NodePoint>& nodes() const { return nodes_; }
  const NodePoint& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::size_t>& resolution() const { return resolution_; }

  friend bool operator==(const IndexSpace&, const IndexSpace&) = default;

 private:
  GeometryTag geometry_;
  std::vector<NodePoint> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> resolution_;
};

/// Abstract space with the given positive masses, normalized to sum 1. Masses
/// that already sum to 1 within 1e-12 are kept unchanged.
IndexSpace make_finite_space(std::span<const double> weights);

/// Uniform abstract space on n nodes.
IndexSpace make_uniform_space(std::size_t n);

/// Grid constructors.
///   interval: {n} cell midpoints (k + 1/2)/n, uniform weights.
///   torus(d): {n_1, ..., n_d} product lattice with coordinates k_i/n_i,
///             lexicographic order (last index fastest), uniform weights.
///   sphere2:  {target[, bands[, order]]}; see SphereGridOptions.
IndexSpace make_grid_space(GeometryTag geometry, std::span<const std::size_t> resolution);

/// Latitude-band sphere grid. Bands sit at colatitudes pi(b + 1/2)/bands;
/// node counts follow sin(colatitude) and sum to `target`. Every band count
/// is a multiple of `order`, so rotation about the z-axis by 2pi/order maps
/// the grid onto itself. Node weights are the band's area share split
/// evenly among its nodes. bands == 0 picks the odd integer nearest
/// sqrt(pi * target / 4).
struct SphereGridOptions {
  std::size_t target = 0;
  std::size_t bands = 0;
  std::size_t order = 1;
};
IndexSpace make_sphere_grid(const SphereGridOptions& options);

/// Per-band node counts chosen by make_sphere_grid.
std::vector<std::size_t> sphere_band_counts(const SphereGridOptions& options);

/// Index of the first node of each sphere band plus a trailing total.
std::vector<std::size_t> sphere_band_offsets(const IndexSpace& space);

/// Linear node index of a torus multi-index (entries taken mod resolution).
std::size_t torus_node_index(const IndexSpace& space, std::span<const long long> multi);
/// Multi-index of a torus node.
std::vector<long long> torus_multi_index(const IndexSpace& space, std::size_t node);

/// Geodesic distance on T^1 = R/Z.
double circle_distance(double a, double b);

}  // namespace graphondyn
