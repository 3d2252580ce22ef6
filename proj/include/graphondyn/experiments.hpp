#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphondyn/discretize.hpp"
#include "graphondyn/dynamics.hpp"
#include "graphondyn/kernel.hpp"
#include "graphondyn/norms.hpp"
#include "graphondyn/symmetry.hpp"

namespace graphondyn {

/// Series of a measured quantity against a bound at sampled times.
/// `pass` is set iff measured[k] <= bound[k] + slack for every k; it is
/// empty for informational runs (heuristic norms, sphere ghosts).
struct ExperimentReport {
  std::string name;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<double> times;
  std::vector<double> measured;
  std::vector<double> bound;
  std::optional<bool> pass;
  double slack = 0.0;
  std::optional<NormResult> norm;
  std::map<std::string, std::vector<double>> extra;
  std::string note;
};

/// Recomputes the verdict from the series: every measured <= bound + slack.
bool bound_holds(const ExperimentReport& report);

/// theta_i = 2 pi (q_1 x_1 + ... + q_d x_d) at the torus grid nodes.
State twisted_state(const IndexSpace& space, std::span<const long long> q);

/// sup_i |rhs_i| for Kuramoto(0, 0) on the max-metric geodesic kernel of
/// half-width delta, evaluated at the q-twisted state.
double twisted_residual(const IndexSpace& space, double delta, std::span<const long long> q);

struct GhostOptions {
  std::size_t n = 16;
  double p = 0.5;
  std::uint64_t seed = 0;
  State u0;                 // initial state of the limit system; fixed by the map
  State perturbation;       // added to u0 for the finite system; empty = none
  double t_end = 2.0;
  double step = 1e-3;
  std::size_t sample_every = 10;
  bool exact_limit = false;            // use the constant kernel itself instead of ER(n, p)
  std::size_t heuristic_restarts = 64;  // used only when n exceeds the exact-norm limit
  double slack = 0.0;
};

/// Symmetry deviation ||phi^* u_n(t) - u_n(t)||_1 of Kuramoto(0, 0) on
/// ER(n, p) against 2 (d0 + 2t ||A - p||_{inf->1}) e^{2t}. The map must be
/// a graphon automorphism of the constant-p system and u0 must be fixed by
/// it. extra["limit_distance"] holds ||u_n(t) - u(t)||_1.
ExperimentReport ghost_experiment(const GhostOptions& options, const IndexMap& map);

struct ContinuityOptions {
  double t_end = 2.0;
  double step = 1e-3;
  std::size_t sample_every = 10;
  double omega = 0.0;
  double alpha = 0.0;
  std::size_t heuristic_restarts = 64;
  double slack = 0.0;
};

/// ||u(t) - v(t)||_1 for Kuramoto flows on W and U against
/// (||u0 - v0||_1 + 2t ||W - U||_{inf->1}) e^{2t}.
ExperimentReport continuity_experiment(const IndexSpace& space, const Kernel& w, const Kernel& u, const State& u0,
                                       const State& v0, const ContinuityOptions& options = {});

struct SphereGhostOptions {
  std::size_t target = 200;
  double delta = 0.6;
  std::uint64_t seed = 0;
  double t_end = 20.0;
  double step = 1e-2;
  std::size_t sample_every = 50;
};

/// A graph sampled from the sphere geodesic graphon (edge i~j with
/// probability W(x_i, x_j)), started from a z-reflection symmetric state.
/// Reports the reflection deviation over time; informational only.
ExperimentReport sphere_ghost_run(const SphereGhostOptions& options);

}  // namespace graphondyn
