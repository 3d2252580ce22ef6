#pragma once

// Fixed-step RK4 driver shared by the real-valued and particle integrators.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphondyn/errors.hpp"

namespace graphondyn::detail {

/// rhs(y, dydt) evaluates the vector field; on_sample(t, y) records states.
template <typename Rhs, typename OnSample>
void rk4_run(std::vector<double> y, double t_end, std::size_t steps, std::size_t sample_every, Rhs&& rhs,
             OnSample&& on_sample) {
  const std::size_t n = y.size();
  const double h = t_end / static_cast<double>(steps);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  on_sample(0.0, y);
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t0 = h * static_cast<double>(s - 1);
    rhs(std::span<const double>(y), std::span<double>(k1));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(std::span<const double>(tmp), std::span<double>(k2));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(std::span<const double>(tmp), std::span<double>(k3));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(std::span<const double>(tmp), std::span<double>(k4));
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double t = (s == steps) ? t_end : h * static_cast<double>(s);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(y[i])) {
        throw NumericFailure("integration produced a non-finite value at node " + std::to_string(i) +
                                 " after t=" + std::to_string(t0),
                             i, t);
      }
    }
    if (s == steps || s % sample_every == 0) on_sample(t, y);
  }
}

}  // namespace graphondyn::detail
