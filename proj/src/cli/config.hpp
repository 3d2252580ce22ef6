#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphondyn/io.hpp"

namespace graphondyn::cli {

/// Schema violation; `path` names the offending field, e.g. "integration.step".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A JSON object plus its dotted location in the config document.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const Json& json() const { return *value_; }
  const std::string& path() const { return path_; }
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return value_->is_object() && value_->contains(key); }
  Node at(const std::string& key) const;

  template <typename T>
  T get(const std::string& key) const {
    const Node n = at(key);
    try {
      return n.json().get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(n.path(), "wrong type");
    }
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

 private:
  const Json* value_;
  std::string path_;
};

struct Integration {
  double t_end = 0.0;
  double step = 0.0;
  std::size_t sample_every = 1;
};

/// Seeds encountered while building objects, recorded in the manifest.
struct SeedLog {
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  std::uint64_t take(const Node& node, const std::string& key = "seed");
};

IndexSpace build_space(const Node& node);
/// Coupled system from a kernel description on `space`. Besides the serializable
/// kernels this accepts adjacency matrices, ER samples and spherical graphops.
CoupledSystem build_system(const Node& node, const IndexSpace& space, SeedLog& seeds);
/// Kernel-valued specs only (needed where W itself enters a norm).
Kernel build_kernel(const Node& node, const IndexSpace& space);
ModelFunctions build_model(const Node* node);
State build_state(const Node& node, const IndexSpace& space, SeedLog& seeds);
IndexMap build_map(const Node& node, const IndexSpace& space, SeedLog& seeds);
Integration build_integration(const Node& node);

}  // namespace graphondyn::cli
