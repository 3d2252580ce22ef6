#pragma once

// Independent reference for the inf->1 norm: enumerate every pair of sign
// vectors (f, g) and evaluate the weighted bilinear form directly.

#include <cmath>
#include <cstdint>

#include "graphondyn/matrix.hpp"
#include "graphondyn/space.hpp"

namespace graphondyn::oracle {

inline double full_enumeration_norm(const IndexSpace& space, const SquareMatrix& d) {
  const std::size_t n = d.size();
  double best = 0.0;
  for (std::uint64_t fm = 0; fm < (std::uint64_t{1} << n); ++fm) {
    for (std::uint64_t gm = 0; gm < (std::uint64_t{1} << n); ++gm) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double fi = (fm >> i) & 1 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double gj = (gm >> j) & 1 ? -1.0 : 1.0;
          s += space.weight(i) * space.weight(j) * d(i, j) * fi * gj;
        }
      }
      best = std::max(best, std::abs(s));
    }
  }
  return best;
}

}  // namespace graphondyn::oracle
