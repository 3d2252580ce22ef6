#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "graphondyn/kernel.hpp"
#include "graphondyn/matrix.hpp"
#include "graphondyn/space.hpp"

namespace graphondyn {

struct CouplingEntry {
  std::size_t index;
  double weight;

  friend bool operator==(const CouplingEntry&, const CouplingEntry&) = default;
};

using CouplingRow = std::vector<CouplingEntry>;

/// A finite coupled system: node i couples to node j with weight w_ij.
/// For graphon-derived systems w_ij = W(x_i, x_j) mu_j; for graphops the
/// rows are the fiber measures nu_i as point masses on the nodes.
///
/// Rows are sorted by neighbour index without duplicates, weights are finite
/// and nonnegative, and every row sums to at most 1 + 1e-9.
class CoupledSystem {
 public:
  CoupledSystem(IndexSpace space, std::vector<CouplingRow> rows, std::string label);

  const IndexSpace& space() const { return space_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<CouplingRow>& rows() const { return rows_; }
  const CouplingRow& row(std::size_t i) const { return rows_[i]; }
  const std::string& label() const { return label_; }

  /// Row i as a dense vector of length n.
  std::vector<double> dense_row(std::size_t i) const;
  /// Kernel values w_ij / mu_j as a dense matrix.
  SquareMatrix kernel_values() const;
  std::size_t nonzeros() const;

  friend bool operator==(const CoupledSystem&, const CoupledSystem&) = default;

 private:
  IndexSpace space_;
  std::vector<CouplingRow> rows_;
  std::string label_;
};

/// Quadrature of the coupling integral at the space's nodes:
/// rows[i] = {(j, W(x_i, x_j) mu_j)}, zero entries dropped. The diagonal
/// term is kept.
CoupledSystem discretize(const Kernel& kernel, const IndexSpace& space);

/// Dense matrix of kernel values W(x_i, x_j).
SquareMatrix kernel_matrix(const Kernel& kernel, const IndexSpace& space);

/// Graph dynamics on the uniform n-point space: w_ij = A_ij / n.
CoupledSystem graph_system(const SquareMatrix& adjacency, std::string label = "graph");

/// Symmetric 0/1 Erdos-Renyi adjacency without self-loops. Edge {i<j} is
/// present iff Philox4x32-10(key = seed, counter = i*n + j) < p.
SquareMatrix sample_er_adjacency(std::size_t n, double p, std::uint64_t seed);

/// ER(n, p) as a coupled system on the uniform n-point space.
CoupledSystem sample_er(std::size_t n, double p, std::uint64_t seed);

}  // namespace graphondyn
