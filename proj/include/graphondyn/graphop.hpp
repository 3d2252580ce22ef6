#pragma once

#include <cstddef>
#include <vector>

#include "graphondyn/discretize.hpp"
#include "graphondyn/matrix.hpp"

namespace graphondyn {

/// A coupled system whose rows are fiber measures nu_x (point masses on
/// grid nodes), which need not have the form W(x, .) mu. Graphop dynamics
/// is dynamics::integrate applied to `system` unchanged.
struct FiberSystem {
  CoupledSystem system;
  /// True when every fiber was rescaled to total mass 1.
  bool normalized = false;
  /// Band half-width used for spherical fibers, 0 otherwise.
  double band_halfwidth = 0.0;

  std::vector<double> fiber(std::size_t i) const { return system.dense_row(i); }
};

/// nu_x = W(x, .) dmu: rows[i] = {(j, W_ij mu_j)}.
FiberSystem graphop_from_weighted(const SquareMatrix& w, const IndexSpace& space);

/// Discretized uniform measures on great circles: the fiber of x_i is the
/// set of nodes y with |<x_i, y>| <= eps, weighted by mu_y and normalized
/// to mass 1. Throws DegenerateFiber listing the nodes with empty fibers.
FiberSystem spherical_graphop(const IndexSpace& space, double band_halfwidth);

/// Largest spacing of a band sphere grid: max of the band step pi/B and
/// every band's along-latitude node spacing.
double sphere_grid_spacing(const IndexSpace& space);

/// 1.5 x sphere_grid_spacing.
double default_band_halfwidth(const IndexSpace& space);

}  // namespace graphondyn
