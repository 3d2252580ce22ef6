#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "graphondyn/matrix.hpp"
#include "graphondyn/space.hpp"

namespace graphondyn {

/// W = c everywhere.
struct ConstantKernel {
  double value = 0.0;
};

/// Step function on the interval: W(x,y) = values(j,k) for x in cell j,
/// y in cell k. Cells are [b_j, b_{j+1}) with b_0 = 0 and b_last = 1.
struct BlockKernel {
  std::vector<double> boundaries;
  SquareMatrix values;

  std::size_t cell_of(double x) const;
};

/// Indicator of the closed geodesic ball of radius delta.
///   torus(1), interval: arc distance on R/Z (delta in units of the circumference);
///   torus(d >= 2): max over coordinates of the arc distance;
///   sphere2: great-circle angle in radians.
struct GeodesicKernel {
  GeometryTag geometry;
  double delta = 0.0;

  double distance(const NodePoint& x, const NodePoint& y) const;
};

/// Explicit values on an abstract n-point space, indexed by node index.
struct MatrixKernel {
  SquareMatrix values;
};

/// User-supplied evaluator. Must be pure and symmetric.
struct CustomKernel {
  GeometryTag geometry;
  std::function<double(const NodePoint&, const NodePoint&)> fn;
  std::string name;
  std::size_t abstract_nodes = 0;
};

/// Symmetric coupling function W: J x J -> [0,1].
class Kernel {
 public:
  using Variant = std::variant<ConstantKernel, BlockKernel, GeodesicKernel, MatrixKernel, CustomKernel>;

  static Kernel constant(double c);
  static Kernel block(std::vector<double> boundaries, SquareMatrix values);
  static Kernel geodesic(GeometryTag geometry, double delta);
  static Kernel matrix(SquareMatrix values);
  /// Samples 100 random point pairs and rejects evaluators that are
  /// asymmetric or leave [0,1]. `abstract_nodes` is the node count for
  /// abstract geometries.
  static Kernel custom(GeometryTag geometry,
                       std::function<double(const NodePoint&, const NodePoint&)> fn,
                       std::string name, std::size_t abstract_nodes = 0);

  /// W(x, y). Throws InvalidArgument when the points do not fit the kernel.
  double eval(const NodePoint& x, const NodePoint& y) const;

  /// Whether the kernel can be evaluated on spaces of this geometry.
  bool supports(const GeometryTag& geometry) const;

  const Variant& variant() const { return variant_; }
  std::string kind() const;

 private:
  explicit Kernel(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// Tolerance added to delta when testing geodesic ball membership, so that
/// lattice distances equal to delta count as connected despite rounding.
inline constexpr double kGeodesicTieTolerance = 1e-12;

double eval_kernel(const Kernel& kernel, const NodePoint& x, const NodePoint& y);

/// Canonical embedding of a graph on the unit interval: n equal cells,
/// W = A(j,k) on cell j x cell k. Weighted [0,1] entries are accepted.
Kernel canonical_embedding(const SquareMatrix& adjacency);

/// Same, with cell lengths proportional to `vertex_weights`.
Kernel canonical_embedding(const SquareMatrix& adjacency, const std::vector<double>& vertex_weights);

Kernel geodesic_kernel(GeometryTag geometry, double delta);

}  // namespace graphondyn
