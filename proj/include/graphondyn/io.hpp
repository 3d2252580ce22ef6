#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "graphondyn/discretize.hpp"
#include "graphondyn/dynamics.hpp"
#include "graphondyn/experiments.hpp"
#include "graphondyn/graphop.hpp"
#include "graphondyn/kernel.hpp"
#include "graphondyn/meanfield.hpp"
#include "graphondyn/norms.hpp"
#include "graphondyn/space.hpp"
#include "graphondyn/symmetry.hpp"

namespace graphondyn {

using Json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

Json to_json(const GeometryTag& g);
GeometryTag geometry_from_json(const Json& j);

/// {geometry, resolution, nodes, weights}.
Json to_json(const IndexSpace& space);
IndexSpace space_from_json(const Json& j);

/// Block and matrix kernels as {variant, boundaries, values}; geodesic as
/// {variant, geometry, delta}. Custom kernels cannot be serialized.
Json to_json(const Kernel& kernel);
Kernel kernel_from_json(const Json& j);

/// {label, space, rows}, rows as lists of [j, w] pairs.
Json to_json(const CoupledSystem& system);
CoupledSystem system_from_json(const Json& j);
/// CoupledSystem fields plus {normalized, band_halfwidth}.
Json to_json(const FiberSystem& fibers);

inline constexpr std::size_t kDenseCsvMaxNodes = 2000;
/// Dense w_ij matrix, one row per line. Throws SizeLimit above 2000 nodes.
std::string dense_csv(const CoupledSystem& system);

Json to_json(const AutomorphismReport& report);
Json to_json(const NormResult& result);
Json to_json(const ExperimentReport& report);
/// Header t,measured,bound (bound column empty when there is none).
std::string series_csv(const ExperimentReport& report);

/// Header t,u_0,...,u_{n-1}.
std::string trajectory_csv(const Trajectory& traj);
/// Columns t,node,particle,value.
std::string measure_csv(const MeasureTrajectory& traj);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace graphondyn
