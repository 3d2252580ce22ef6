#include "graphondyn/graphop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "graphondyn/errors.hpp"

namespace graphondyn {

namespace {
// Slack on |<x, y>| <= eps so that rotated copies of a grid pair classify
// the same way despite rounding in their coordinates.
constexpr double kBandTieTolerance = 1e-12;
}  // namespace

FiberSystem graphop_from_weighted(const SquareMatrix& w, const IndexSpace& space) {
  const std::size_t n = space.size();
  if (w.size() != n) throw InvalidArgument("graphop_from_weighted: matrix size does not match the space");
  if (!w.is_symmetric()) throw InvalidArgument("graphop_from_weighted: W is not symmetric");
  std::vector<CouplingRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("graphop_from_weighted: entries must lie in [0,1]");
      if (v != 0.0) rows[i].push_back({j, v * space.weight(j)});
    }
  }
  return FiberSystem{CoupledSystem(space, std::move(rows), "graphop"), false, 0.0};
}

FiberSystem spherical_graphop(const IndexSpace& space, double band_halfwidth) {
  if (space.geometry().kind != Geometry::sphere2) {
    throw InvalidArgument("spherical_graphop: space geometry is " + space.geometry().name() + ", need sphere2");
  }
  if (!(band_halfwidth > 0.0)) throw InvalidArgument("spherical_graphop: band half-width must be > 0");
  const std::size_t n = space.size();
  std::vector<CouplingRow> rows(n);
  std::vector<std::size_t> empty;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = space.node(i).coords;
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& y = space.node(j).coords;
      const double dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
      if (std::abs(dot) <= band_halfwidth + kBandTieTolerance) {
        rows[i].push_back({j, space.weight(j)});
        mass += space.weight(j);
      }
    }
    if (rows[i].empty()) {
      empty.push_back(i);
      continue;
    }
    for (auto& e : rows[i]) e.weight /= mass;
  }
  if (!empty.empty()) {
    std::string list;
    for (std::size_t k = 0; k < empty.size() && k < 16; ++k) list += (k ? "," : "") + std::to_string(empty[k]);
    throw DegenerateFiber("spherical_graphop: " + std::to_string(empty.size()) + " empty fiber(s) at nodes " + list +
                              (empty.size() > 16 ? ",..." : ""),
                          std::move(empty));
  }
  return FiberSystem{CoupledSystem(space, std::move(rows), "graphop"), true, band_halfwidth};
}

double sphere_grid_spacing(const IndexSpace& space) {
  const auto offsets = sphere_band_offsets(space);
  const std::size_t bands = offsets.size() - 1;
  double spacing = std::numbers::pi / static_cast<double>(bands);
  for (std::size_t b = 0; b < bands; ++b) {
    const auto& p = space.node(offsets[b]).coords;
    const double radius = std::sqrt(p[0] * p[0] + p[1] * p[1]);
    const double m = static_cast<double>(offsets[b + 1] - offsets[b]);
    spacing = std::max(spacing, 2.0 * std::numbers::pi * radius / m);
  }
  return spacing;
}

double default_band_halfwidth(const IndexSpace& space) { return 1.5 * sphere_grid_spacing(space); }

}  // namespace graphondyn
