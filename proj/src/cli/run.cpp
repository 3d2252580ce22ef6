#include "cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli/config.hpp"
#include "graphondyn/errors.hpp"
#include "graphondyn/parallel.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn::cli {

namespace {

struct Outcome {
  bool ok = true;
  Json report = Json::object();
  std::vector<std::pair<std::string, std::string>> files;
};

ModelFunctions model_from(const Node& root) {
  if (!root.has("model")) return build_model(nullptr);
  const Node m = root.at("model");
  return build_model(&m);
}

Outcome cmd_simulate(const Node& root, SeedLog& seeds) {
  const IndexSpace space = build_space(root.at("space"));
  const CoupledSystem system = build_system(root.at("kernel"), space, seeds);
  const ModelFunctions model = model_from(root);
  const State u0 = build_state(root.at("initial"), space, seeds);
  const Integration it = build_integration(root.at("integration"));
  const Trajectory traj = integrate(system, model, u0, it.t_end, it.step, it.sample_every);

  Outcome o;
  o.report = {{"command", "simulate"},
              {"label", system.label()},
              {"nodes", system.size()},
              {"nonzeros", system.nonzeros()},
              {"steps", step_count(it.t_end, it.step)},
              {"samples", traj.size()},
              {"final_time", traj.times.back()},
              {"final_state", traj.back()}};
  o.files.emplace_back("trajectory.csv", trajectory_csv(traj));
  if (root.get_or<bool>("export_system", false)) {
    o.files.emplace_back("system.json", to_json(system).dump(2) + "\n");
    if (system.size() <= kDenseCsvMaxNodes) o.files.emplace_back("system_dense.csv", dense_csv(system));
  }
  return o;
}

Subspace build_subspace(const Node& node, const IndexSpace& space, const IndexMap& map) {
  const auto type = node.get<std::string>("type");
  if (type == "fixed") {
    const std::vector<IndexMap> gens{map};
    return Subspace::fixed_set(gens, space.size());
  }
  if (type == "image") return Subspace::image_of(map);
  if (type == "clusters") {
    return Subspace::clusters(space.size(), node.get<std::vector<std::vector<std::size_t>>>("sets"));
  }
  throw ConfigError(node.child_path("type"), "unknown subspace '" + type + "'");
}

ExperimentReport audit_report(const std::string& name, const AuditResult& audit, double tol) {
  ExperimentReport r;
  r.name = name;
  r.times = audit.times;
  r.measured = audit.deviations;
  r.bound.assign(audit.times.size(), tol);
  r.pass = bound_holds(r);
  return r;
}

Outcome cmd_audit(const Node& root, SeedLog& seeds) {
  const IndexSpace space = build_space(root.at("space"));
  const CoupledSystem system = build_system(root.at("kernel"), space, seeds);
  const ModelFunctions model = model_from(root);
  const State u0 = build_state(root.at("initial"), space, seeds);
  const Integration it = build_integration(root.at("integration"));
  const IndexMap map = build_map(root.at("map"), space, seeds);
  const double tol = root.get_or<double>("tolerance", root.has("subspace") ? 1e-10 : 1e-8);

  Outcome o;
  o.report["command"] = "audit";
  ExperimentReport series;
  if (root.has("subspace")) {
    const Subspace sub = build_subspace(root.at("subspace"), space, map);
    State start = u0;
    if (root.get_or<bool>("project_initial", true)) start = sub.project(space, u0);
    series = audit_report("invariance", invariance_audit(system, model, sub, start, it.t_end, it.step,
                                                         it.sample_every),
                          tol);
    series.parameters = {{"subspace", sub.description()}, {"tolerance", tol}};
    o.ok = *series.pass;
  } else {
    const AutomorphismReport check = check_automorphism(system, map);
    o.report["automorphism"] = to_json(check);
    series = audit_report("equivariance", equivariance_audit(system, model, map, u0, it.t_end, it.step,
                                                             it.sample_every),
                          tol);
    series.parameters = {{"tolerance", tol}};
    const bool is_auto = check.verdict == AutomorphismVerdict::graphon_automorphism ||
                         check.verdict == AutomorphismVerdict::graphop_automorphism;
    o.ok = is_auto && *series.pass;
  }
  o.report["audit"] = to_json(series);
  o.report["pass"] = o.ok;
  o.files.emplace_back("series.csv", series_csv(series));
  return o;
}

Outcome cmd_twisted(const Node& root, SeedLog&) {
  const IndexSpace space = build_space(root.at("space"));
  const auto q = root.get<std::vector<long long>>("q");
  const double delta = root.get<double>("delta");
  const double tol = root.get_or<double>("tolerance", 1e-12);
  const double residual = twisted_residual(space, delta, q);
  Outcome o;
  o.ok = residual <= tol;
  o.report = {{"command", "twisted"}, {"nodes", space.size()}, {"delta", delta}, {"q", q},
              {"residual", residual}, {"tolerance", tol},      {"pass", o.ok}};
  Trajectory single;
  single.times.push_back(0.0);
  single.states.push_back(twisted_state(space, q));
  o.files.emplace_back("state.csv", trajectory_csv(single));
  return o;
}

Outcome experiment_outcome(const std::string& command, const ExperimentReport& r) {
  Outcome o;
  o.ok = r.pass.value_or(true);
  o.report = to_json(r);
  o.report["command"] = command;
  o.files.emplace_back("series.csv", series_csv(r));
  return o;
}

Outcome cmd_ghost(const Node& root, SeedLog& seeds) {
  GhostOptions opt;
  opt.n = root.get<std::size_t>("n");
  opt.p = root.get<double>("p");
  opt.exact_limit = root.get_or<bool>("exact_limit", false);
  if (!opt.exact_limit) opt.seed = seeds.take(root);
  const IndexSpace space = make_uniform_space(opt.n);
  const IndexMap map = root.has("map") ? build_map(root.at("map"), space, seeds)
                                       : cyclic_shift(opt.n, static_cast<long long>(opt.n / 2));
  opt.u0 = build_state(root.at("initial"), space, seeds);
  if (root.get_or<bool>("symmetrize", true)) {
    const std::vector<IndexMap> gens{map};
    opt.u0 = Subspace::fixed_set(gens, opt.n).project(space, opt.u0);
  }
  if (root.has("perturbation")) {
    const Node pert = root.at("perturbation");
    const double scale = pert.get<double>("scale");
    PhiloxStream rng(seeds.take(pert), 1);
    opt.perturbation.resize(opt.n);
    for (auto& x : opt.perturbation) x = scale * (2.0 * rng.uniform() - 1.0);
  }
  const Integration it = build_integration(root.at("integration"));
  opt.t_end = it.t_end;
  opt.step = it.step;
  opt.sample_every = it.sample_every;
  opt.slack = root.get_or<double>("slack", 0.0);
  return experiment_outcome("ghost", ghost_experiment(opt, map));
}

Outcome cmd_continuity(const Node& root, SeedLog& seeds) {
  const IndexSpace space = build_space(root.at("space"));
  const Kernel w = build_kernel(root.at("kernel_w"), space);
  const Kernel u = build_kernel(root.at("kernel_u"), space);
  const State u0 = build_state(root.at("initial_u"), space, seeds);
  const State v0 = root.has("initial_v") ? build_state(root.at("initial_v"), space, seeds) : u0;
  const Integration it = build_integration(root.at("integration"));
  ContinuityOptions opt;
  opt.t_end = it.t_end;
  opt.step = it.step;
  opt.sample_every = it.sample_every;
  if (root.has("model")) {
    const Node m = root.at("model");
    opt.omega = m.get_or<double>("omega", 0.0);
    opt.alpha = m.get_or<double>("alpha", 0.0);
  }
  opt.slack = root.get_or<double>("slack", 0.0);
  return experiment_outcome("continuity", continuity_experiment(space, w, u, u0, v0, opt));
}

MeasureState build_measure(const Node& node, const IndexSpace& space, SeedLog& seeds) {
  const auto type = node.get<std::string>("type");
  const std::size_t n = space.size();
  if (type == "replicated") return MeasureState::replicated(n, node.get<std::vector<double>>("values"));
  if (type == "dirac") return MeasureState::dirac(build_state(node.at("state"), space, seeds));
  if (type == "random") {
    const std::size_t m = node.get<std::size_t>("particles");
    PhiloxStream rng(seeds.take(node), 2);
    const double lo = node.get_or<double>("low", 0.0);
    const double hi = node.get_or<double>("high", 2.0 * std::numbers::pi);
    std::vector<double> values(n * m);
    for (auto& x : values) x = lo + (hi - lo) * rng.uniform();
    return MeasureState(n, m, std::move(values));
  }
  throw ConfigError(node.child_path("type"), "unknown measure '" + type + "'");
}

Outcome cmd_meanfield(const Node& root, SeedLog& seeds) {
  const IndexSpace space = build_space(root.at("space"));
  const CoupledSystem system = build_system(root.at("kernel"), space, seeds);
  const MeasureState m0 = build_measure(root.at("initial"), space, seeds);
  const Integration it = build_integration(root.at("integration"));
  const MeasureTrajectory traj = integrate_meanfield(system, m0, it.t_end, it.step, it.sample_every);
  Outcome o;
  o.report = {{"command", "meanfield"},
              {"nodes", m0.nodes()},
              {"particles", m0.particles()},
              {"samples", traj.size()},
              {"final_time", traj.times.back()},
              {"metric", "sorted-particle L1 proxy"}};
  if (root.has("map")) {
    const IndexMap map = build_map(root.at("map"), space, seeds);
    const double tol = root.get_or<double>("tolerance", 1e-8);
    const MeasureTrajectory moved = integrate_meanfield(system, pullback(map, m0), it.t_end, it.step,
                                                        it.sample_every);
    double dev = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      dev = std::max(dev, measure_distance(space, pullback(map, traj.states[k]), moved.states[k]));
    }
    o.report["automorphism"] = to_json(check_automorphism(system, map));
    o.report["equivariance_deviation"] = dev;
    o.report["tolerance"] = tol;
    o.ok = dev <= tol;
    o.report["pass"] = o.ok;
  }
  o.files.emplace_back("measures.csv", measure_csv(traj));
  return o;
}

Outcome cmd_norms(const Node& root, SeedLog& seeds) {
  const IndexSpace space = build_space(root.at("space"));
  SquareMatrix d = kernel_matrix(build_kernel(root.at("kernel_w"), space), space);
  if (root.has("kernel_u")) d = d - kernel_matrix(build_kernel(root.at("kernel_u"), space), space);
  const auto method = root.get_or<std::string>("method", "auto");
  const bool exact = method == "exact" || (method == "auto" && space.size() <= kExactNormMaxNodes);
  if (method != "auto" && method != "exact" && method != "heuristic") {
    throw ConfigError(root.child_path("method"), "expected auto, exact or heuristic");
  }
  NormResult r;
  if (exact) {
    r = inf_to_one_norm_exact(space, d);
  } else {
    r = inf_to_one_norm_lower(space, d, root.get_or<std::size_t>("restarts", 64), seeds.take(root));
  }
  Outcome o;
  o.report = {{"command", "norms"}, {"nodes", space.size()}, {"norm", to_json(r)}};
  if (!exact) o.report["note"] = "lower bound from alternating sign improvement";
  return o;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

using Command = Outcome (*)(const Node&, SeedLog&);

Command find_command(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"simulate", cmd_simulate}, {"audit", cmd_audit},         {"twisted", cmd_twisted}, {"ghost", cmd_ghost},
      {"continuity", cmd_continuity}, {"meanfield", cmd_meanfield}, {"norms", cmd_norms}};
  for (const auto& [n, c] : table) {
    if (name == n) return c;
  }
  return nullptr;
}

}  // namespace

int run(const RunOptions& options, std::ostream& log, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  Json config;
  try {
    config = Json::parse(read_file(options.config));
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: " << options.config.string() << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const Node root(config, "");
  SeedLog seeds;
  Outcome outcome;
  std::string command;
  std::filesystem::path out_dir;
  try {
    command = root.get<std::string>("command");
    const Command fn = find_command(command);
    if (!fn) throw ConfigError("command", "unknown command '" + command + "'");
    out_dir = options.out_dir ? *options.out_dir : std::filesystem::path(root.get_or<std::string>("output", "out"));
    if (options.threads) {
      set_thread_count(*options.threads);
    } else if (root.has("threads")) {
      set_thread_count(root.get<std::size_t>("threads"));
    }
    outcome = fn(root, seeds);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::logic_error& e) {
    // InvalidArgument, SizeLimit and other precondition violations.
    err << "invalid config: " << e.what() << "\n";
    return kUsageError;
  } catch (const UnsupportedGroup& e) {
    err << "invalid config: " << e.what() << "\n";
    return kUsageError;
  } catch (const DegenerateFiber& e) {
    err << "invalid config: " << e.what() << "\n";
    return kUsageError;
  }

  const int code = outcome.ok ? kSuccess : kCheckFailed;
  try {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> names;
    outcome.files.emplace_back("report.json", outcome.report.dump(2) + "\n");
    for (const auto& [name, content] : outcome.files) {
      write_file(out_dir / name, content);
      names.push_back(name);
    }
    Json seed_json = Json::object();
    for (const auto& [path, value] : seeds.entries) seed_json[path] = value;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const Json manifest = {{"command", command},
                           {"config_path", options.config.string()},
                           {"config", config},
                           {"seeds", seed_json},
                           {"version", GRAPHONDYN_VERSION},
                           {"threads", thread_count()},
                           {"timestamp", utc_timestamp()},
                           {"elapsed_seconds", elapsed},
                           {"artifacts", names},
                           {"exit_code", code}};
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  log << command << ": " << (outcome.ok ? "ok" : "FAILED") << " (artifacts in " << out_dir.string() << ")\n";
  return code;
}

}  // namespace graphondyn::cli
