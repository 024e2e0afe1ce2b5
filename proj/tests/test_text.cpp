#include <doctest.h>

#include <fstream>

#include "test_support.hpp"
#include "veritas/eval/text.hpp"

using veritas::eval::porter_stem;
using veritas::eval::tokenize;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize") {
  CHECK(tokenize("The cat sat.") == Tokens{"the", "cat", "sat"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  ...  ").empty());
  CHECK(tokenize("COVID-19 claims!") == Tokens{"covid", "19", "claims"});
  CHECK(tokenize("don't") == Tokens{"don", "t"});
  CHECK(tokenize("\xC3\x89T\xC3\x89 \xC3\xA0 Z\xC3\xBCrich") ==
        Tokens{"\xC3\xA9t\xC3\xA9", "\xC3\xA0", "z\xC3\xBCrich"});
  CHECK(tokenize("caf\xC3\xA9\xE2\x80\x94" "bar") == Tokens{"caf\xC3\xA9", "bar"});  // em dash splits
  CHECK(tokenize("a\xFF" "b") == Tokens{"a", "b"});
}

TEST_CASE("porter examples") {
  CHECK(porter_stem("running") == "run");
  CHECK(porter_stem("cat") == "cat");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("") == "");
  CHECK(porter_stem("\xC3\xA9t\xC3\xA9s") == "\xC3\xA9t\xC3\xA9");
}

TEST_CASE("porter reference vectors") {
  std::ifstream in(veritas::testing::fixture("porter_vectors.tsv"));
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const auto word = line.substr(0, tab);
    const auto stem = line.substr(tab + 1);
    INFO("word: " << word);
    CHECK(porter_stem(word) == stem);
    ++checked;
  }
  CHECK(checked > 1000);
}
