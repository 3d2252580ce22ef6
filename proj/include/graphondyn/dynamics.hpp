#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphondyn/discretize.hpp"

namespace graphondyn {

/// One real value per node. Phases are stored unwrapped.
using State = std::vector<double>;

/// Parameters of the Kuramoto preset; rhs uses an inlined evaluation path
/// for it that performs the same arithmetic as the generic functions.
struct KuramotoParams {
  double omega = 0.0;
  double alpha = 0.0;
};

/// du_x/dt = f(u_x, sum_y w_xy g(u_x, u_y)).
struct ModelFunctions {
  std::function<double(double, double)> activation;  // f(u, s)
  std::function<double(double, double)> coupling;    // g(u_x, u_y)
  std::optional<double> lipschitz_activation;        // K_f
  std::optional<double> lipschitz_coupling;          // K_g
  std::string name;
  std::optional<KuramotoParams> kuramoto;
};

/// f(u, s) = omega + s, g(u, v) = sin(v - u + alpha), K_f = K_g = 1.
ModelFunctions kuramoto_model(double omega, double alpha);

/// Generic model from user functions; Lipschitz bounds are optional.
ModelFunctions make_model(std::function<double(double, double)> activation,
                          std::function<double(double, double)> coupling, std::string name,
                          std::optional<double> k_f = std::nullopt, std::optional<double> k_g = std::nullopt);

/// Rate K_f + 2 K_f K_g of the L1 Lipschitz bound on the vector field;
/// empty when the model does not declare both constants.
std::optional<double> flow_lipschitz_rate(const ModelFunctions& model);

/// Time derivative at `state`. Within a row the coupling sum runs in
/// ascending neighbour order, so results do not depend on threading.
State rhs(const CoupledSystem& system, const ModelFunctions& model, std::span<const double> state);
void rhs_into(const CoupledSystem& system, const ModelFunctions& model, std::span<const double> state,
              std::span<double> out);

/// Sampled flow. Times are strictly monotone in the direction of
/// integration (decreasing for backward runs) and start at 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const { return times.size(); }
  const State& back() const { return states.back(); }
};

/// Classical fixed-step RK4 from t = 0 to t_end (negative for backward
/// integration). The step is shrunk so an integer number of steps lands
/// on t_end exactly. Samples t = 0, every `sample_every` steps, and t_end.
Trajectory integrate(const CoupledSystem& system, const ModelFunctions& model, const State& state0,
                     double t_end, double step = 1e-3, std::size_t sample_every = 1);

/// Number of RK4 steps integrate() uses for (t_end, step).
std::size_t step_count(double t_end, double step);

}  // namespace graphondyn
