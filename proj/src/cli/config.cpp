#include "cli/config.hpp"

#include <numbers>

#include "graphondyn/errors.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn::cli {

namespace {

std::string type_of(const Node& node) {
  if (!node.json().is_object()) throw ConfigError(node.path(), "expected an object");
  return node.get<std::string>("type");
}

[[noreturn]] void unknown(const Node& node, const std::string& what, const std::string& value) {
  throw ConfigError(node.child_path("type"), "unknown " + what + " '" + value + "'");
}

SquareMatrix matrix_at(const Node& node, const std::string& key) {
  const auto rows = node.get<std::vector<std::vector<double>>>(key);
  try {
    return SquareMatrix::from_rows(rows);
  } catch (const InvalidArgument& e) {
    throw ConfigError(node.child_path(key), e.what());
  }
}

}  // namespace

Node Node::at(const std::string& key) const {
  if (!value_->is_object()) throw ConfigError(path_, "expected an object");
  const auto it = value_->find(key);
  if (it == value_->end()) throw ConfigError(child_path(key), "missing required field");
  return Node(*it, child_path(key));
}

std::uint64_t SeedLog::take(const Node& node, const std::string& key) {
  const auto v = node.get<std::uint64_t>(key);
  entries.emplace_back(node.child_path(key), v);
  return v;
}

IndexSpace build_space(const Node& node) {
  const auto geometry = node.get<std::string>("geometry");
  if (geometry == "abstract" || geometry == "uniform") {
    if (node.has("weights")) return make_finite_space(node.get<std::vector<double>>("weights"));
    return make_uniform_space(node.get<std::size_t>("n"));
  }
  if (geometry == "interval") {
    const std::size_t n = node.get<std::size_t>("n");
    return make_grid_space(GeometryTag::interval(), std::vector<std::size_t>{n});
  }
  if (geometry == "torus") {
    const auto res = node.get<std::vector<std::size_t>>("resolution");
    return make_grid_space(GeometryTag::torus(res.size()), res);
  }
  if (geometry == "sphere") {
    SphereGridOptions opt;
    opt.target = node.get<std::size_t>("target");
    opt.bands = node.get_or<std::size_t>("bands", 0);
    opt.order = node.get_or<std::size_t>("order", 1);
    return make_sphere_grid(opt);
  }
  throw ConfigError(node.child_path("geometry"), "unknown geometry '" + geometry + "'");
}

Kernel build_kernel(const Node& node, const IndexSpace& space) {
  const std::string type = type_of(node);
  if (type == "constant") return Kernel::constant(node.get<double>("value"));
  if (type == "block") return Kernel::block(node.get<std::vector<double>>("boundaries"), matrix_at(node, "values"));
  if (type == "matrix") return Kernel::matrix(matrix_at(node, "values"));
  if (type == "geodesic") return Kernel::geodesic(space.geometry(), node.get<double>("delta"));
  unknown(node, "kernel", type);
}

CoupledSystem build_system(const Node& node, const IndexSpace& space, SeedLog& seeds) {
  const std::string type = type_of(node);
  if (type == "adjacency") return graph_system(matrix_at(node, "values"), node.get_or<std::string>("label", "graph"));
  if (type == "er") {
    const std::size_t n = space.size();
    const double p = node.get<double>("p");
    return sample_er(n, p, seeds.take(node));
  }
  if (type == "spherical_graphop") {
    const double eps = node.has("band_halfwidth") ? node.get<double>("band_halfwidth") : default_band_halfwidth(space);
    return spherical_graphop(space, eps).system;
  }
  return discretize(build_kernel(node, space), space);
}

ModelFunctions build_model(const Node* node) {
  if (!node) return kuramoto_model(0.0, 0.0);
  const std::string type = node->get_or<std::string>("type", "kuramoto");
  if (type != "kuramoto") throw ConfigError(node->child_path("type"), "only the kuramoto model is configurable");
  return kuramoto_model(node->get_or<double>("omega", 0.0), node->get_or<double>("alpha", 0.0));
}

State build_state(const Node& node, const IndexSpace& space, SeedLog& seeds) {
  const std::string type = type_of(node);
  const std::size_t n = space.size();
  if (type == "values") {
    auto v = node.get<std::vector<double>>("values");
    if (v.size() != n) {
      throw ConfigError(node.child_path("values"), "expected " + std::to_string(n) + " entries, got " +
                                                        std::to_string(v.size()));
    }
    return v;
  }
  if (type == "constant") return State(n, node.get<double>("value"));
  if (type == "random") {
    PhiloxStream rng(seeds.take(node), node.get_or<std::uint32_t>("stream", 0));
    const double lo = node.get_or<double>("low", 0.0);
    const double hi = node.get_or<double>("high", 2.0 * std::numbers::pi);
    State s(n);
    for (auto& x : s) x = lo + (hi - lo) * rng.uniform();
    return s;
  }
  if (type == "twisted") return twisted_state(space, node.get<std::vector<long long>>("q"));
  unknown(node, "initial state", type);
}

IndexMap build_map(const Node& node, const IndexSpace& space, SeedLog& seeds) {
  const std::string type = type_of(node);
  const std::size_t n = space.size();
  if (type == "identity") return IndexMap::identity(n);
  if (type == "permutation") return IndexMap(node.get<std::vector<std::size_t>>("targets"));
  if (type == "swap_halves") {
    if (n % 2) throw ConfigError(node.path(), "swap_halves needs an even node count");
    return cyclic_shift(n, static_cast<long long>(n / 2));
  }
  if (type == "shift") return cyclic_shift(n, node.get<long long>("by"));
  if (type == "reversal" || type == "reflection") return reversal(n);
  if (type == "doubling") return multiplication_map(n, 2);
  if (type == "multiply") return multiplication_map(n, node.get<long long>("q"));
  if (type == "random_permutation") return random_permutation(n, seeds.take(node));
  if (type == "torus_shift") return torus_translation(space, node.get<std::vector<long long>>("shift"));
  if (type == "torus_reflect") return torus_reflection(space, node.get<std::vector<bool>>("flip"));
  if (type == "torus_swap") return torus_axis_permutation(space, node.get<std::vector<std::size_t>>("perm"));
  if (type == "torus_multiply") return torus_multiplication(space, node.get<std::vector<long long>>("q"));
  if (type == "sphere_rotate") {
    return sphere_z_rotation(space, node.get<long long>("steps"), node.get<std::size_t>("order"));
  }
  if (type == "sphere_reflect") return sphere_z_reflection(space);
  unknown(node, "map", type);
}

Integration build_integration(const Node& node) {
  Integration it;
  it.t_end = node.get<double>("t_end");
  it.step = node.get<double>("step");
  it.sample_every = node.get_or<std::size_t>("sample_every", 1);
  if (!(it.step > 0.0)) throw ConfigError(node.child_path("step"), "must be > 0");
  if (it.t_end == 0.0) throw ConfigError(node.child_path("t_end"), "must be nonzero");
  if (it.sample_every == 0) throw ConfigError(node.child_path("sample_every"), "must be at least 1");
  return it;
}

}  // namespace graphondyn::cli
