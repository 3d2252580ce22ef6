#include "graphondyn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "graphondyn/errors.hpp"

namespace graphondyn {

namespace {

template <typename T>
T field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

Json matrix_json(const SquareMatrix& m) { return m.to_rows(); }

SquareMatrix matrix_from(const Json& j, const char* where) {
  try {
    return SquareMatrix::from_rows(j.get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string(where) + ": expected a square matrix of numbers");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvalidArgument("format_double: conversion failed");
  return std::string(buf, end);
}

Json to_json(const GeometryTag& g) {
  Json j = {{"kind", g.name()}};
  if (g.kind == Geometry::torus) j = {{"kind", "torus"}, {"dim", g.dim}};
  return j;
}

GeometryTag geometry_from_json(const Json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : field<std::string>(j, "kind", "geometry");
  if (kind == "abstract") return GeometryTag::abstract();
  if (kind == "interval") return GeometryTag::interval();
  if (kind == "sphere2" || kind == "sphere") return GeometryTag::sphere2();
  if (kind.rfind("torus", 0) == 0) {
    if (j.is_object() && j.contains("dim")) return GeometryTag::torus(field<std::size_t>(j, "dim", "geometry"));
    const std::string rest = kind.substr(5);
    if (rest.empty()) return GeometryTag::torus(1);
    std::size_t d = 0;
    const auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
    if (ec == std::errc() && p == rest.data() + rest.size() && d > 0) return GeometryTag::torus(d);
  }
  throw InvalidArgument("geometry: unknown kind '" + kind + "'");
}

Json to_json(const IndexSpace& space) {
  Json nodes = Json::array();
  for (const auto& p : space.nodes()) nodes.push_back(p.coords);
  return {{"geometry", to_json(space.geometry())},
          {"resolution", space.resolution()},
          {"nodes", std::move(nodes)},
          {"weights", space.weights()}};
}

IndexSpace space_from_json(const Json& j) {
  const GeometryTag g = geometry_from_json(field<Json>(j, "geometry", "space"));
  const auto coords = field<std::vector<std::vector<double>>>(j, "nodes", "space");
  std::vector<NodePoint> nodes;
  nodes.reserve(coords.size());
  for (const auto& c : coords) nodes.push_back(NodePoint{c});
  auto resolution = j.contains("resolution") ? field<std::vector<std::size_t>>(j, "resolution", "space")
                                             : std::vector<std::size_t>{};
  return IndexSpace(g, std::move(nodes), field<std::vector<double>>(j, "weights", "space"), std::move(resolution));
}

Json to_json(const Kernel& kernel) {
  return std::visit(
      [](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantKernel>) {
          return {{"variant", "constant"}, {"value", k.value}};
        } else if constexpr (std::is_same_v<K, BlockKernel>) {
          return {{"variant", "block"}, {"boundaries", k.boundaries}, {"values", matrix_json(k.values)}};
        } else if constexpr (std::is_same_v<K, GeodesicKernel>) {
          return {{"variant", "geodesic"}, {"geometry", to_json(k.geometry)}, {"delta", k.delta}};
        } else if constexpr (std::is_same_v<K, MatrixKernel>) {
          return {{"variant", "matrix"}, {"values", matrix_json(k.values)}};
        } else {
          throw InvalidArgument("custom kernel '" + k.name + "' cannot be serialized");
        }
      },
      kernel.variant());
}

Kernel kernel_from_json(const Json& j) {
  const auto variant = field<std::string>(j, "variant", "kernel");
  if (variant == "constant") return Kernel::constant(field<double>(j, "value", "kernel"));
  if (variant == "block") {
    return Kernel::block(field<std::vector<double>>(j, "boundaries", "kernel"),
                         matrix_from(field<Json>(j, "values", "kernel"), "kernel.values"));
  }
  if (variant == "geodesic") {
    return Kernel::geodesic(geometry_from_json(field<Json>(j, "geometry", "kernel")),
                            field<double>(j, "delta", "kernel"));
  }
  if (variant == "matrix") return Kernel::matrix(matrix_from(field<Json>(j, "values", "kernel"), "kernel.values"));
  throw InvalidArgument("kernel: unknown variant '" + variant + "'");
}

Json to_json(const CoupledSystem& system) {
  Json rows = Json::array();
  for (const auto& row : system.rows()) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(Json::array({e.index, e.weight}));
    rows.push_back(std::move(r));
  }
  return {{"label", system.label()}, {"space", to_json(system.space())}, {"rows", std::move(rows)}};
}

CoupledSystem system_from_json(const Json& j) {
  IndexSpace space = space_from_json(field<Json>(j, "space", "system"));
  const auto raw = field<Json>(j, "rows", "system");
  if (!raw.is_array()) throw InvalidArgument("system: rows must be an array");
  std::vector<CouplingRow> rows;
  rows.reserve(raw.size());
  for (const auto& r : raw) {
    CouplingRow row;
    try {
      for (const auto& e : r) row.push_back({e.at(0).get<std::size_t>(), e.at(1).get<double>()});
    } catch (const nlohmann::json::exception&) {
      throw InvalidArgument("system: each row entry must be a [j, w] pair");
    }
    rows.push_back(std::move(row));
  }
  return CoupledSystem(std::move(space), std::move(rows), field<std::string>(j, "label", "system"));
}

Json to_json(const FiberSystem& fibers) {
  Json j = to_json(fibers.system);
  j["normalized"] = fibers.normalized;
  j["band_halfwidth"] = fibers.band_halfwidth;
  return j;
}

std::string dense_csv(const CoupledSystem& system) {
  if (system.size() > kDenseCsvMaxNodes) {
    throw SizeLimit("dense_csv: " + std::to_string(system.size()) + " nodes exceeds " +
                    std::to_string(kDenseCsvMaxNodes));
  }
  std::string out;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto row = system.dense_row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_double(row[k]);
    }
    out += '\n';
  }
  return out;
}

Json to_json(const AutomorphismReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"measure_preserving", r.measure_preserving},
          {"mass_discrepancy", r.mass_discrepancy},
          {"adjacency_preserving", r.adjacency_preserving},
          {"weight_discrepancy", r.weight_discrepancy},
          {"fiber_preserving", r.fiber_preserving},
          {"fiber_discrepancy", r.fiber_discrepancy}};
}

Json to_json(const NormResult& r) {
  return {{"value", r.value}, {"method", to_string(r.method)}, {"f", r.f}, {"g", r.g}};
}

Json to_json(const ExperimentReport& r) {
  Json j = {{"name", r.name}, {"parameters", r.parameters}};
  j["pass"] = r.pass ? Json(*r.pass) : Json(nullptr);
  j["informational"] = !r.pass.has_value();
  j["slack"] = r.slack;
  if (r.norm) j["norm"] = to_json(*r.norm);
  j["times"] = r.times;
  j["measured"] = r.measured;
  if (!r.bound.empty()) j["bound"] = r.bound;
  for (const auto& [name, series] : r.extra) j["extra"][name] = series;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string series_csv(const ExperimentReport& r) {
  std::string out = "t,measured,bound\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    out += format_double(r.times[k]);
    out += ',';
    out += format_double(r.measured[k]);
    out += ',';
    if (k < r.bound.size()) out += format_double(r.bound[k]);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  for (std::size_t i = 0; i < n; ++i) out += ",u_" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_double(traj.times[k]);
    for (double v : traj.states[k]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string measure_csv(const MeasureTrajectory& traj) {
  std::string out = "t,node,particle,value\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::string t = format_double(traj.times[k]);
    const auto& s = traj.states[k];
    for (std::size_t i = 0; i < s.nodes(); ++i) {
      for (std::size_t p = 0; p < s.particles(); ++p) {
        out += t + ',' + std::to_string(i) + ',' + std::to_string(p) + ',' + format_double(s.at(i, p)) + '\n';
      }
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace graphondyn
