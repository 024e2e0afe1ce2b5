#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "veritas/eval/hungarian.hpp"
#include "veritas/eval/meteor.hpp"
#include "veritas/eval/scoring.hpp"
#include "veritas/vector_index.hpp"

namespace {

using namespace veritas;

std::vector<std::string> random_sentences(std::size_t count, std::size_t words, unsigned seed) {
  static const std::vector<std::string> vocab = {
      "the", "claim", "states", "that", "water", "boils", "at", "sea", "level", "tower",
      "paris", "was", "built", "in", "not", "true", "reported", "running", "answers", "found"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::vector<std::string> out(count);
  for (auto& s : out) {
    for (std::size_t i = 0; i < words; ++i) s += (i ? " " : "") + vocab[pick(rng)];
  }
  return out;
}

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  eval::Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(eval::hungarian(m, true));
}
BENCHMARK(BM_Hungarian)->Arg(4)->Arg(16)->Arg(64);

void BM_Meteor(benchmark::State& state) {
  const auto words = static_cast<std::size_t>(state.range(0));
  const auto a = random_sentences(1, words, 2).front();
  const auto b = random_sentences(1, words, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(eval::meteor(a, b));
}
BENCHMARK(BM_Meteor)->Arg(8)->Arg(32)->Arg(128);

void BM_HungarianMeteor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gen = random_sentences(n, 12, 4);
  const auto refs = random_sentences(n, 12, 5);
  for (auto _ : state) benchmark::DoNotOptimize(eval::hungarian_meteor(gen, refs));
}
BENCHMARK(BM_HungarianMeteor)->Arg(3)->Arg(10);

void BM_Search(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = 1536;
  std::mt19937 rng(6);
  std::normal_distribution<float> g;
  VectorIndex index(dim, "bench");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<float> v(dim);
    for (auto& x : v) x = g(rng);
    index.add("d" + std::to_string(i), EmbeddingVector::normalized(std::move(v)));
  }
  std::vector<float> q(dim);
  for (auto& x : q) x = g(rng);
  const auto query = EmbeddingVector::normalized(std::move(q));
  for (auto _ : state) benchmark::DoNotOptimize(search(index, query, 3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Search)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
