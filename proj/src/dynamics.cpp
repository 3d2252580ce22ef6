#include "graphondyn/dynamics.hpp"

#include <cmath>
#include <string>

#include "graphondyn/errors.hpp"
#include "graphondyn/parallel.hpp"
#include "rk4.hpp"

namespace graphondyn {

namespace {

// Rows below this many coupling terms per worker are not worth a thread.
constexpr std::size_t kMinTermsPerChunk = 20000;

template <typename F, typename G>
void evaluate_rows(const CoupledSystem& system, std::span<const double> u, std::span<double> out, F&& f,
                   G&& g) {
  const std::size_t n = system.size();
  const std::size_t avg_terms = std::max<std::size_t>(1, system.nonzeros() / std::max<std::size_t>(1, n));
  const auto& rows = system.rows();
  parallel_for(n, std::max<std::size_t>(1, kMinTermsPerChunk / avg_terms), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double ui = u[i];
      double s = 0.0;
      for (const auto& entry : rows[i]) s += entry.weight * g(ui, u[entry.index]);
      const double d = f(ui, s);
      if (!std::isfinite(d)) {
        throw NumericFailure("model returned a non-finite value at node " + std::to_string(i), i,
                             std::nan(""));
      }
      out[i] = d;
    }
  });
}

}  // namespace

ModelFunctions kuramoto_model(double omega, double alpha) {
  ModelFunctions m;
  m.activation = [omega](double, double s) { return omega + s; };
  m.coupling = [alpha](double u, double v) { return std::sin(v - u + alpha); };
  m.lipschitz_activation = 1.0;
  m.lipschitz_coupling = 1.0;
  m.name = "kuramoto";
  m.kuramoto = KuramotoParams{omega, alpha};
  return m;
}

ModelFunctions make_model(std::function<double(double, double)> activation,
                          std::function<double(double, double)> coupling, std::string name,
                          std::optional<double> k_f, std::optional<double> k_g) {
  if (!activation || !coupling) throw InvalidArgument("make_model: f and g must be callable");
  if ((k_f && *k_f < 0.0) || (k_g && *k_g < 0.0)) {
    throw InvalidArgument("make_model: Lipschitz constants must be nonnegative");
  }
  ModelFunctions m;
  m.activation = std::move(activation);
  m.coupling = std::move(coupling);
  m.lipschitz_activation = k_f;
  m.lipschitz_coupling = k_g;
  m.name = std::move(name);
  return m;
}

std::optional<double> flow_lipschitz_rate(const ModelFunctions& model) {
  if (!model.lipschitz_activation || !model.lipschitz_coupling) return std::nullopt;
  const double kf = *model.lipschitz_activation;
  return kf + 2.0 * kf * *model.lipschitz_coupling;
}

void rhs_into(const CoupledSystem& system, const ModelFunctions& model, std::span<const double> state,
              std::span<double> out) {
  if (state.size() != system.size() || out.size() != system.size()) {
    throw InvalidArgument("rhs: state has " + std::to_string(state.size()) + " entries, system has " +
                          std::to_string(system.size()) + " nodes");
  }
  if (model.kuramoto) {
    const double omega = model.kuramoto->omega;
    const double alpha = model.kuramoto->alpha;
    evaluate_rows(
        system, state, out, [omega](double, double s) { return omega + s; },
        [alpha](double u, double v) { return std::sin(v - u + alpha); });
  } else {
    evaluate_rows(system, state, out, model.activation, model.coupling);
  }
}

State rhs(const CoupledSystem& system, const ModelFunctions& model, std::span<const double> state) {
  State out(system.size());
  rhs_into(system, model, state, out);
  return out;
}

std::size_t step_count(double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("integrate: step must be > 0");
  if (t_end == 0.0 || !std::isfinite(t_end)) throw InvalidArgument("integrate: t_end must be finite and nonzero");
  const double ratio = std::abs(t_end) / step;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-9)));
}

Trajectory integrate(const CoupledSystem& system, const ModelFunctions& model, const State& state0,
                     double t_end, double step, std::size_t sample_every) {
  if (state0.size() != system.size()) {
    throw InvalidArgument("integrate: initial state has " + std::to_string(state0.size()) +
                          " entries, system has " + std::to_string(system.size()) + " nodes");
  }
  if (sample_every == 0) throw InvalidArgument("integrate: sample_every must be at least 1");
  for (double v : state0) {
    if (!std::isfinite(v)) throw InvalidArgument("integrate: initial state is not finite");
  }
  const std::size_t steps = step_count(t_end, step);
  Trajectory traj;
  traj.times.reserve(steps / sample_every + 2);
  traj.states.reserve(steps / sample_every + 2);
  double current_time = 0.0;
  try {
    detail::rk4_run(
        state0, t_end, steps, sample_every,
        [&](std::span<const double> y, std::span<double> dy) { rhs_into(system, model, y, dy); },
        [&](double t, const std::vector<double>& y) {
          current_time = t;
          traj.times.push_back(t);
          traj.states.push_back(y);
        });
  } catch (const NumericFailure& e) {
    if (std::isnan(e.time())) {
      throw NumericFailure(std::string(e.what()) + " (after t=" + std::to_string(current_time) + ")", e.node(),
                           current_time);
    }
    throw;
  }
  return traj;
}

}  // namespace graphondyn
