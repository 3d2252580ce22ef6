#include "graphondyn/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphondyn/errors.hpp"
#include "graphondyn/random.hpp"

namespace graphondyn {

namespace {
constexpr double kRowSumTol = 1e-9;
}

CoupledSystem::CoupledSystem(IndexSpace space, std::vector<CouplingRow> rows, std::string label)
    : space_(std::move(space)), rows_(std::move(rows)), label_(std::move(label)) {
  const std::size_t n = space_.size();
  if (rows_.size() != n) {
    throw InvalidArgument("coupled system: " + std::to_string(rows_.size()) + " rows for " +
                          std::to_string(n) + " nodes");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rows_[i].size(); ++k) {
      const auto& e = rows_[i][k];
      if (e.index >= n) throw InvalidArgument("coupled system: row " + std::to_string(i) + " index out of range");
      if (k > 0 && e.index <= rows_[i][k - 1].index) {
        throw InvalidArgument("coupled system: row " + std::to_string(i) + " not strictly ascending");
      }
      if (!std::isfinite(e.weight) || e.weight < 0.0) {
        throw InvalidArgument("coupled system: row " + std::to_string(i) + " has an invalid weight");
      }
      sum += e.weight;
    }
    if (sum > 1.0 + kRowSumTol) {
      throw InvalidArgument("coupled system: row " + std::to_string(i) + " has mass " + std::to_string(sum) +
                            " > 1");
    }
  }
}

std::vector<double> CoupledSystem::dense_row(std::size_t i) const {
  std::vector<double> out(size(), 0.0);
  for (const auto& e : rows_.at(i)) out[e.index] = e.weight;
  return out;
}

SquareMatrix CoupledSystem::kernel_values() const {
  SquareMatrix k(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : rows_[i]) k(i, e.index) = e.weight / space_.weight(e.index);
  }
  return k;
}

std::size_t CoupledSystem::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& r : rows_) nz += r.size();
  return nz;
}

CoupledSystem discretize(const Kernel& kernel, const IndexSpace& space) {
  if (!kernel.supports(space.geometry())) {
    throw InvalidArgument("discretize: " + kernel.kind() + " kernel does not support geometry " +
                          space.geometry().name());
  }
  const std::size_t n = space.size();
  std::vector<CouplingRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = kernel.eval(space.node(i), space.node(j));
      if (w != 0.0) rows[i].push_back({j, w * space.weight(j)});
    }
  }
  return CoupledSystem(space, std::move(rows), kernel.kind());
}

SquareMatrix kernel_matrix(const Kernel& kernel, const IndexSpace& space) {
  if (!kernel.supports(space.geometry())) {
    throw InvalidArgument("kernel_matrix: " + kernel.kind() + " kernel does not support geometry " +
                          space.geometry().name());
  }
  const std::size_t n = space.size();
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = kernel.eval(space.node(i), space.node(j));
  }
  return m;
}

CoupledSystem graph_system(const SquareMatrix& adjacency, std::string label) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw InvalidArgument("graph_system: empty adjacency");
  if (!adjacency.is_symmetric()) throw InvalidArgument("graph_system: adjacency is not symmetric");
  std::vector<CouplingRow> rows(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = adjacency(i, j);
      if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("graph_system: entries must lie in [0,1]");
      if (a != 0.0) rows[i].push_back({j, a * inv_n});
    }
  }
  return CoupledSystem(make_uniform_space(n), std::move(rows), std::move(label));
}

SquareMatrix sample_er_adjacency(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample_er: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("sample_er: p must lie in [0,1]");
  const Philox4x32 gen(seed);
  SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool edge = gen.uniform(static_cast<std::uint64_t>(i) * n + j) < p;
      a(i, j) = a(j, i) = edge ? 1.0 : 0.0;
    }
  }
  return a;
}

CoupledSystem sample_er(std::size_t n, double p, std::uint64_t seed) {
  return graph_system(sample_er_adjacency(n, p, seed),
                      "er(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
}

}  // namespace graphondyn
