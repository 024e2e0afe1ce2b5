#include <doctest.h>

#include <cmath>
#include <random>

#include "veritas/error.hpp"
#include "veritas/eval/meteor.hpp"
#include "veritas/eval/text.hpp"

using namespace veritas::eval;
using Tokens = std::vector<std::string>;

namespace {

const std::vector<MatchStage> kBoth = {MatchStage::Exact, MatchStage::Stem};

// Chunks of a pair set sorted by hyp index, counted independently.
std::size_t count_chunks(const Alignment& a) {
  std::size_t chunks = 0;
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    if (k == 0 || a.pairs[k].first != a.pairs[k - 1].first + 1 ||
        a.pairs[k].second != a.pairs[k - 1].second + 1) {
      ++chunks;
    }
  }
  return chunks;
}

}  // namespace

TEST_CASE("alignment examples") {
  const Tokens abc = {"a", "b", "c"};
  auto a = align_unigrams(abc, abc, kBoth);
  CHECK(a.match_count == 3);
  CHECK(a.chunk_count == 1);

  const Tokens hyp = {"on", "the", "mat", "sat", "the", "cat"};
  const Tokens ref = {"the", "cat", "sat", "on", "the", "mat"};
  a = align_unigrams(hyp, ref, kBoth);
  CHECK(a.match_count == 6);
  CHECK(a.chunk_count == 3);

  a = align_unigrams(Tokens{"x", "y"}, Tokens{"p", "q"}, kBoth);
  CHECK(a.match_count == 0);
  CHECK(a.chunk_count == 0);
}

TEST_CASE("stem stage only sees tokens left by the exact stage") {
  const Tokens hyp = {"running", "dogs", "run"};
  const Tokens ref = {"run", "dog"};
  const std::vector<MatchStage> exact_only = {MatchStage::Exact};
  auto a = align_unigrams(hyp, ref, exact_only);
  CHECK(a.match_count == 1);
  CHECK(a.pairs[0] == std::pair<std::size_t, std::size_t>{2, 0});

  a = align_unigrams(hyp, ref, kBoth);
  CHECK(a.match_count == 2);  // run=run exactly, dogs~dog by stem; running stays unmatched
  CHECK(a.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 0}});
}

TEST_CASE("meteor values") {
  const auto same = meteor_tokens(tokenize("the cat sat on the mat"), tokenize("the cat sat on the mat"));
  CHECK(same.alignment.match_count == 6);
  CHECK(same.penalty == doctest::Approx(0.5 / 216.0).epsilon(1e-12));
  CHECK(same.score == doctest::Approx(0.9976852).epsilon(1e-7));

  const auto reordered = meteor_tokens(tokenize("on the mat sat the cat"), tokenize("the cat sat on the mat"));
  CHECK(reordered.fmean == doctest::Approx(1.0));
  CHECK(reordered.penalty == doctest::Approx(0.0625));
  CHECK(reordered.score == doctest::Approx(0.9375).epsilon(1e-12));

  CHECK(meteor("xyz qrs", "abc def") == 0.0);
  CHECK(meteor("", "abc") == 0.0);
  CHECK(meteor("abc", "") == 0.0);
  CHECK(meteor("!!!", "???") == 0.0);
}

TEST_CASE("meteor hand computed partial match") {
  // hyp 4 tokens, ref 2 tokens, 2 matches in one chunk.
  // P = 1/2, R = 1, Fmean = 10*0.5*1 / (1 + 9*0.5) = 5/5.5
  const auto m = meteor_tokens(tokenize("the cat is here"), tokenize("the cat"));
  CHECK(m.precision == doctest::Approx(0.5));
  CHECK(m.recall == doctest::Approx(1.0));
  CHECK(m.fmean == doctest::Approx(5.0 / 5.5));
  CHECK(m.penalty == doctest::Approx(0.5 * std::pow(0.5, 3)));
  CHECK(m.score == doctest::Approx(5.0 / 5.5 * (1 - 0.0625)));
}

TEST_CASE("parameters") {
  MeteorParams p;
  CHECK_NOTHROW(p.validate());
  p.penalty_gamma = 0;
  CHECK_THROWS_AS(p.validate(), veritas::ValidationError);
  p = {};
  p.match_stages = {};
  CHECK_THROWS_AS(p.validate(), veritas::ValidationError);
  p.match_stages = {MatchStage::Exact, MatchStage::Exact};
  CHECK_THROWS_AS(p.validate(), veritas::ValidationError);

  MeteorParams exact_only;
  exact_only.match_stages = {MatchStage::Exact};
  CHECK(meteor("cats", "cat", exact_only) == 0.0);
  CHECK(meteor("cats", "cat") > 0.0);
}

TEST_CASE("random sweep: bounds, identity formula, alignment invariants") {
  std::mt19937 rng(5);
  const std::vector<std::string> vocab = {"the", "cat", "cats", "sat", "sitting", "on", "mat",
                                          "mats", "a", "dog", "run", "running", "ran", "is"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(0, 9);
  auto random_tokens = [&] {
    Tokens t(len(rng));
    for (auto& x : t) x = vocab[pick(rng)];
    return t;
  };
  for (int i = 0; i < 500; ++i) {
    const auto h = random_tokens();
    const auto r = random_tokens();
    const auto m = meteor_tokens(h, r);
    CHECK(m.score >= 0.0);
    CHECK(m.score <= 1.0);
    const auto& a = m.alignment;
    CHECK(a.chunk_count == count_chunks(a));
    CHECK(a.chunk_count <= a.match_count);
    CHECK((a.match_count == 0) == (m.score == 0.0));
    std::vector<bool> hu(h.size()), ru(r.size());
    for (const auto& [hi, ri] : a.pairs) {
      CHECK_FALSE(hu[hi]);
      CHECK_FALSE(ru[ri]);
      hu[hi] = ru[ri] = true;
      CHECK(porter_stem(h[hi]) == porter_stem(r[ri]));
    }
    if (!h.empty()) {
      const double n = static_cast<double>(h.size());
      CHECK(meteor_tokens(h, h).score == doctest::Approx(1.0 - 0.5 / (n * n * n)).epsilon(1e-12));
    }
  }
}
