#include "veritas/eval/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "veritas/error.hpp"

namespace veritas::eval {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

namespace {

// Kuhn-Munkres with row/column potentials on a square cost matrix
// (minimization). Returns the row -> column matching and leaves the dual
// potentials in u (rows) and v (columns), both 1-based with slot 0 unused.
std::vector<std::size_t> solve_min(const Matrix& cost, std::vector<double>& u,
                                   std::vector<double>& v) {
  const std::size_t n = cost.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Rewrites an optimal matching into the lexicographically smallest optimal
// one. Every perfect matching that uses only tight edges (zero reduced
// cost under the optimal potentials) is optimal, so rows are fixed in order
// to their smallest tight column for which the remaining rows can still be
// re-matched along an alternating path.
class LexicographicRepair {
 public:
  LexicographicRepair(const Matrix& cost, const std::vector<double>& u,
                      const std::vector<double>& v, std::vector<std::size_t>& row_to_col)
      : n_(cost.rows()), row_to_col_(row_to_col), col_to_row_(n_), fixed_row_(n_, false),
        fixed_col_(n_, false), tight_(n_ * n_, false) {
    double scale = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) scale = std::max(scale, std::abs(cost(i, j)));
    }
    const double tolerance = 1e-9 * scale;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        tight_[i * n_ + j] = cost(i, j) - u[i + 1] - v[j + 1] <= tolerance;
      }
      tight_[i * n_ + row_to_col_[i]] = true;
    }
    for (std::size_t i = 0; i < n_; ++i) col_to_row_[row_to_col_[i]] = i;
  }

  void run(std::size_t rows_to_fix) {
    for (std::size_t i = 0; i < rows_to_fix; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (fixed_col_[j] || !tight(i, j)) continue;
        if (row_to_col_[i] == j || reroute(i, j)) {
          fixed_row_[i] = true;
          fixed_col_[j] = true;
          break;
        }
      }
    }
  }

 private:
  bool tight(std::size_t i, std::size_t j) const { return tight_[i * n_ + j]; }

  // Moves row i onto column j. The row displaced from j must reach the
  // column i gives up through an alternating path of tight edges that avoids
  // fixed rows and columns.
  bool reroute(std::size_t i, std::size_t j) {
    const std::size_t freed = row_to_col_[i];
    const std::size_t displaced = col_to_row_[j];
    if (fixed_row_[displaced]) return false;

    std::vector<std::size_t> saved_row_to_col = row_to_col_;
    std::vector<std::size_t> saved_col_to_row = col_to_row_;
    row_to_col_[i] = j;
    col_to_row_[j] = i;
    visited_.assign(n_, false);
    visited_[j] = true;
    if (augment(displaced, freed)) return true;
    row_to_col_ = std::move(saved_row_to_col);
    col_to_row_ = std::move(saved_col_to_row);
    return false;
  }

  bool augment(std::size_t row, std::size_t target_col) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (visited_[c] || fixed_col_[c] || !tight(row, c)) continue;
      visited_[c] = true;
      if (c == target_col) {
        row_to_col_[row] = c;
        col_to_row_[c] = row;
        return true;
      }
      const std::size_t next = col_to_row_[c];
      if (fixed_row_[next] || next == row) continue;
      if (augment(next, target_col)) {
        row_to_col_[row] = c;
        col_to_row_[c] = row;
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::size_t>& row_to_col_;
  std::vector<std::size_t> col_to_row_;
  std::vector<bool> fixed_row_;
  std::vector<bool> fixed_col_;
  std::vector<bool> tight_;
  std::vector<bool> visited_;
};

}  // namespace

Assignment hungarian(const Matrix& weights, bool maximize) {
  if (weights.empty()) throw ValidationError("assignment matrix must be at least 1x1");
  const std::size_t rows = weights.rows();
  const std::size_t cols = weights.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(weights(r, c))) {
        throw ValidationError("assignment matrix has a non-finite entry");
      }
    }
  }

  const std::size_t n = std::max(rows, cols);
  Matrix cost(n, n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) cost(r, c) = maximize ? -weights(r, c) : weights(r, c);
  }

  std::vector<double> u, v;
  auto row_to_col = solve_min(cost, u, v);
  LexicographicRepair(cost, u, v, row_to_col).run(rows);

  Assignment result;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t c = row_to_col[r];
    if (c >= cols) continue;
    result.pairs.emplace_back(r, c);
    result.total += weights(r, c);
  }
  return result;
}

}  // namespace veritas::eval
