#include "graphondyn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "graphondyn/errors.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn {

namespace {

void check_unit_range(double v, const std::string& where) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(where + ": kernel value outside [0,1]");
}

void check_dims(const GeometryTag& g, const NodePoint& x, const NodePoint& y) {
  if (x.coords.size() != g.coord_dim() || y.coords.size() != g.coord_dim()) {
    throw InvalidArgument("kernel on " + g.name() + " evaluated at points of the wrong dimension");
  }
}

std::size_t abstract_index(const NodePoint& p, std::size_t n) {
  if (p.coords.size() != 1) throw InvalidArgument("matrix kernel needs abstract node points");
  const double c = p.coords[0];
  if (!(c >= 0.0) || c != std::floor(c) || c >= static_cast<double>(n)) {
    throw InvalidArgument("matrix kernel: node index out of range");
  }
  return static_cast<std::size_t>(c);
}

NodePoint random_point(const GeometryTag& g, std::size_t abstract_nodes, PhiloxStream& rng) {
  switch (g.kind) {
    case Geometry::abstract:
      return {{static_cast<double>(rng.below(std::max<std::size_t>(1, abstract_nodes)))}};
    case Geometry::interval:
      return {{rng.uniform()}};
    case Geometry::torus: {
      NodePoint p;
      for (std::size_t d = 0; d < g.dim; ++d) p.coords.push_back(rng.uniform());
      return p;
    }
    case Geometry::sphere2: {
      double x = rng.normal(), y = rng.normal(), z = rng.normal();
      const double r = std::sqrt(x * x + y * y + z * z);
      return {{x / r, y / r, z / r}};
    }
  }
  return {};
}

}  // namespace

std::size_t BlockKernel::cell_of(double x) const {
  const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, x);
  return static_cast<std::size_t>(it - (boundaries.begin() + 1));
}

double GeodesicKernel::distance(const NodePoint& x, const NodePoint& y) const {
  switch (geometry.kind) {
    case Geometry::interval:
      return circle_distance(x.coords[0], y.coords[0]);
    case Geometry::torus: {
      double d = 0.0;
      for (std::size_t k = 0; k < geometry.dim; ++k) {
        d = std::max(d, circle_distance(x.coords[k], y.coords[k]));
      }
      return d;
    }
    case Geometry::sphere2: {
      const auto& a = x.coords;
      const auto& b = y.coords;
      const double cx = a[1] * b[2] - a[2] * b[1];
      const double cy = a[2] * b[0] - a[0] * b[2];
      const double cz = a[0] * b[1] - a[1] * b[0];
      const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
    }
    case Geometry::abstract:
      break;
  }
  throw InvalidArgument("geodesic kernel: unsupported geometry");
}

Kernel Kernel::constant(double c) {
  check_unit_range(c, "constant kernel");
  return Kernel(ConstantKernel{c});
}

Kernel Kernel::block(std::vector<double> boundaries, SquareMatrix values) {
  if (boundaries.size() < 2 || values.size() + 1 != boundaries.size()) {
    throw InvalidArgument("block kernel: need k+1 boundaries for a k x k block matrix");
  }
  if (boundaries.front() != 0.0 || boundaries.back() != 1.0) {
    throw InvalidArgument("block kernel: boundaries must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i] > boundaries[i - 1])) {
      throw InvalidArgument("block kernel: boundaries must be strictly increasing");
    }
  }
  if (!values.is_symmetric()) throw InvalidArgument("block kernel: block matrix is not symmetric");
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) check_unit_range(values(i, j), "block kernel");
  }
  return Kernel(BlockKernel{std::move(boundaries), std::move(values)});
}

Kernel Kernel::geodesic(GeometryTag geometry, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("geodesic kernel: delta must be > 0");
  if (geometry.kind == Geometry::abstract) {
    throw InvalidArgument("geodesic kernel: unsupported geometry " + geometry.name());
  }
  return Kernel(GeodesicKernel{geometry, delta});
}

Kernel Kernel::matrix(SquareMatrix values) {
  if (values.size() == 0) throw InvalidArgument("matrix kernel: empty matrix");
  if (!values.is_symmetric()) throw InvalidArgument("matrix kernel: matrix is not symmetric");
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) check_unit_range(values(i, j), "matrix kernel");
  }
  return Kernel(MatrixKernel{std::move(values)});
}

Kernel Kernel::custom(GeometryTag geometry,
                      std::function<double(const NodePoint&, const NodePoint&)> fn, std::string name,
                      std::size_t abstract_nodes) {
  if (!fn) throw InvalidArgument("custom kernel: empty evaluator");
  if (geometry.kind == Geometry::abstract && abstract_nodes == 0) {
    throw InvalidArgument("custom kernel on an abstract space needs its node count");
  }
  PhiloxStream rng(0x5eed'c0de, 17);
  for (int s = 0; s < 100; ++s) {
    const NodePoint x = random_point(geometry, abstract_nodes, rng);
    const NodePoint y = random_point(geometry, abstract_nodes, rng);
    const double a = fn(x, y);
    const double b = fn(y, x);
    check_unit_range(a, "custom kernel '" + name + "'");
    if (a != b) throw InvalidArgument("custom kernel '" + name + "' is not symmetric");
  }
  return Kernel(CustomKernel{geometry, std::move(fn), std::move(name), abstract_nodes});
}

double Kernel::eval(const NodePoint& x, const NodePoint& y) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantKernel>) {
          return k.value;
        } else if constexpr (std::is_same_v<K, BlockKernel>) {
          check_dims(GeometryTag::interval(), x, y);
          return k.values(k.cell_of(x.coords[0]), k.cell_of(y.coords[0]));
        } else if constexpr (std::is_same_v<K, GeodesicKernel>) {
          check_dims(k.geometry, x, y);
          return k.distance(x, y) <= k.delta + kGeodesicTieTolerance ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<K, MatrixKernel>) {
          const std::size_t n = k.values.size();
          return k.values(abstract_index(x, n), abstract_index(y, n));
        } else {
          check_dims(k.geometry, x, y);
          const double v = k.fn(x, y);
          check_unit_range(v, "custom kernel '" + k.name + "'");
          return v;
        }
      },
      variant_);
}

bool Kernel::supports(const GeometryTag& geometry) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantKernel>) {
          return true;
        } else if constexpr (std::is_same_v<K, BlockKernel>) {
          return geometry.kind == Geometry::interval;
        } else if constexpr (std::is_same_v<K, MatrixKernel>) {
          return geometry.kind == Geometry::abstract;
        } else {
          return geometry == k.geometry;
        }
      },
      variant_);
}

std::string Kernel::kind() const {
  static const char* names[] = {"constant", "block", "geodesic", "matrix", "custom"};
  return names[variant_.index()];
}

double eval_kernel(const Kernel& kernel, const NodePoint& x, const NodePoint& y) {
  return kernel.eval(x, y);
}

Kernel canonical_embedding(const SquareMatrix& adjacency) {
  return canonical_embedding(adjacency, std::vector<double>(adjacency.size(), 1.0));
}

Kernel canonical_embedding(const SquareMatrix& adjacency, const std::vector<double>& vertex_weights) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw InvalidArgument("canonical_embedding: empty adjacency matrix");
  if (vertex_weights.size() != n) throw InvalidArgument("canonical_embedding: one weight per vertex");
  if (!adjacency.is_symmetric()) throw InvalidArgument("canonical_embedding: adjacency is not symmetric");
  double total = 0.0;
  for (double w : vertex_weights) {
    if (!(w > 0.0)) throw InvalidArgument("canonical_embedding: vertex weights must be positive");
    total += w;
  }
  std::vector<double> boundaries(n + 1, 0.0);
  const bool uniform = std::all_of(vertex_weights.begin(), vertex_weights.end(),
                                   [&](double w) { return w == vertex_weights[0]; });
  double acc = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    acc += vertex_weights[k - 1];
    boundaries[k] = uniform ? static_cast<double>(k) / static_cast<double>(n) : acc / total;
  }
  boundaries[n] = 1.0;
  return Kernel::block(std::move(boundaries), adjacency);
}

Kernel geodesic_kernel(GeometryTag geometry, double delta) { return Kernel::geodesic(geometry, delta); }

}  // namespace graphondyn
