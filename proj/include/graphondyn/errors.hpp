#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphondyn {

/// Bad input to a constructor or operation (maps to "invalid-argument").
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A model function or the integrator produced a non-finite value.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, std::size_t node, double time)
      : std::runtime_error(what), node_(node), time_(time) {}

  std::size_t node() const { return node_; }
  double time() const { return time_; }

 private:
  std::size_t node_;
  double time_;
};

/// Orbit enumeration exceeded its work cap.
class UnsupportedGroup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact enumeration requested for a problem that is too large.
class SizeLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Some fiber measure of a graphop came out empty.
class DegenerateFiber : public std::runtime_error {
 public:
  DegenerateFiber(const std::string& what, std::vector<std::size_t> nodes)
      : std::runtime_error(what), nodes_(std::move(nodes)) {}

  const std::vector<std::size_t>& nodes() const { return nodes_; }

 private:
  std::vector<std::size_t> nodes_;
};

}  // namespace graphondyn
