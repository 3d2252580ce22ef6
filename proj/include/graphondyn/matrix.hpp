#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace graphondyn {

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

  bool is_symmetric(double tol = 0.0) const;
  std::vector<std::vector<double>> to_rows() const;

  SquareMatrix operator-(const SquareMatrix& other) const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace graphondyn
