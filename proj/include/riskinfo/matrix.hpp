#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace riskinfo {

// Dense row-major matrix of doubles. Rows are contiguous so kernels can
// consume them directly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::span<const double> row_span(std::size_t i) const {
    return {row(i), cols_};
  }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace riskinfo
