#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace veritas::eval {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), ascending row
  double total = 0.0;  // sum of assigned entries, accumulated in row order
};

// Optimal one-to-one assignment of min(rows, cols) pairs, maximizing or
// minimizing the total. Rectangular input is padded with zeros to square.
// Among optimal assignments the result is the lexicographically smallest
// sequence of (row, col) pairs. Throws ValidationError for an empty matrix
// or a non-finite entry.
Assignment hungarian(const Matrix& weights, bool maximize);

}  // namespace veritas::eval
