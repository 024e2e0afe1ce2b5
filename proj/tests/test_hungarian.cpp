#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "veritas/error.hpp"
#include "veritas/eval/hungarian.hpp"

using namespace veritas::eval;
using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

namespace {

// Best total over all injective maps from the smaller side, summed in row
// order, plus the lexicographically smallest pair list achieving it.
std::pair<double, Pairs> brute_force(const Matrix& m, bool maximize) {
  const bool rows_small = m.rows() <= m.cols();
  const std::size_t small = std::min(m.rows(), m.cols());
  const std::size_t large = std::max(m.rows(), m.cols());
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  double best = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  Pairs best_pairs;
  do {
    Pairs pairs;
    for (std::size_t k = 0; k < small; ++k) {
      pairs.emplace_back(rows_small ? k : perm[k], rows_small ? perm[k] : k);
    }
    std::sort(pairs.begin(), pairs.end());
    double total = 0.0;
    for (const auto& [r, c] : pairs) total += m(r, c);
    if ((maximize && total > best) || (!maximize && total < best) ||
        (total == best && pairs < best_pairs)) {
      best = total;
      best_pairs = pairs;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_pairs};
}

}  // namespace

TEST_CASE("small examples") {
  auto a = hungarian(Matrix{{0.7}}, true);
  CHECK(a.pairs == Pairs{{0, 0}});
  CHECK(a.total == 0.7);

  a = hungarian(Matrix{{0.9, 0.2}, {0.3, 0.8}}, true);
  CHECK(a.pairs == Pairs{{0, 0}, {1, 1}});
  CHECK(a.total == doctest::Approx(1.7));

  a = hungarian(Matrix{{0.9, 0.2}, {0.3, 0.8}}, false);
  CHECK(a.pairs == Pairs{{0, 1}, {1, 0}});
  CHECK(a.total == doctest::Approx(0.5));
}

TEST_CASE("rectangular matrices assign min(rows, cols) pairs") {
  auto a = hungarian(Matrix{{0.1, 0.9, 0.4}}, true);
  CHECK(a.pairs == Pairs{{0, 1}});
  a = hungarian(Matrix{{0.1}, {0.9}, {0.4}}, true);
  CHECK(a.pairs == Pairs{{1, 0}});
  CHECK(a.total == 0.9);
  a = hungarian(Matrix{{1, 2, 3}, {4, 5, 6}}, false);
  CHECK(a.total == doctest::Approx(6.0));
  CHECK(a.pairs == Pairs{{0, 0}, {1, 1}});
}

TEST_CASE("ties resolve to the lexicographically smallest assignment") {
  auto a = hungarian(Matrix{{1, 1}, {1, 1}}, true);
  CHECK(a.pairs == Pairs{{0, 0}, {1, 1}});
  a = hungarian(Matrix{{0, 0, 0}, {0, 0, 0}}, true);
  CHECK(a.pairs == Pairs{{0, 0}, {1, 1}});
  a = hungarian(Matrix{{0}, {0}, {0}}, true);
  CHECK(a.pairs == Pairs{{0, 0}});
  a = hungarian(Matrix{{0.5, 0.5, 0.2}, {0.5, 0.1, 0.5}}, true);
  CHECK(a.pairs == Pairs{{0, 0}, {1, 2}});
  CHECK(a.total == 1.0);
  a = hungarian(Matrix{{1, 0}, {1, 0}}, true);
  CHECK(a.pairs == Pairs{{0, 0}, {1, 1}});
}

TEST_CASE("matches brute force on random and tie-heavy matrices") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 2), dim(1, 6);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    const bool ties = trial % 2 == 1;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = ties ? coarse(rng) * 0.25 : u(rng);
    }
    for (const bool maximize : {true, false}) {
      const auto got = hungarian(m, maximize);
      const auto [best, best_pairs] = brute_force(m, maximize);
      CHECK(got.total == best);
      CHECK(got.pairs.size() == std::min(rows, cols));
      if (ties) CHECK(got.pairs == best_pairs);
    }
  }
}

TEST_CASE("negative and large entries") {
  const Matrix m{{-5, 1e6, 3}, {2, -1e6, 7}, {0, 4, -2}};
  const auto a = hungarian(m, true);
  CHECK(a.total == brute_force(m, true).first);
  const auto b = hungarian(m, false);
  CHECK(b.total == brute_force(m, false).first);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(hungarian(Matrix{}, true), veritas::ValidationError);
  CHECK_THROWS_AS(hungarian(Matrix(0, 3), true), veritas::ValidationError);
  CHECK_THROWS_AS(hungarian(Matrix{{1, NAN}}, true), veritas::ValidationError);
  CHECK_THROWS_AS(hungarian(Matrix{{INFINITY}}, false), veritas::ValidationError);
  CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), veritas::ValidationError);
}
