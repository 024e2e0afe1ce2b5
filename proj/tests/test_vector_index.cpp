#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_support.hpp"
#include "veritas/error.hpp"
#include "veritas/vector_index.hpp"

using namespace veritas;
using veritas::testing::TempDir;
using veritas::testing::slurp;
using veritas::testing::write_file;

namespace {

std::vector<Document> docs_of(std::initializer_list<std::string> texts) {
  std::vector<Document> docs;
  std::size_t i = 0;
  for (const auto& t : texts) docs.push_back({make_doc_id(0, i++), 0, "", t});
  return docs;
}

// Axis-aligned vectors keyed by the first character of the text.
FunctionEmbedder axis_embedder(std::size_t dim = 4) {
  return FunctionEmbedder("axis", dim, [dim](const std::string& text) {
    std::vector<float> v(dim, 0.0f);
    v[static_cast<std::size_t>(text[0] - 'a') % dim] = 1.0f;
    return v;
  });
}

}  // namespace

TEST_CASE("embedding vectors validate and normalize") {
  CHECK_THROWS_AS(EmbeddingVector(std::vector<float>{}), ValidationError);
  CHECK_THROWS_AS(EmbeddingVector({1.0f, NAN}), ValidationError);
  CHECK_THROWS_AS(EmbeddingVector::normalized({0.0f, 0.0f}), ValidationError);
  const auto v = EmbeddingVector::normalized({3.0f, 4.0f});
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(v.values()[0] == doctest::Approx(0.6));
  CHECK(v.dot(v) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(v.dot(EmbeddingVector({1.0f, 0.0f, 0.0f})), ValidationError);
}

TEST_CASE("truncate_utf8 counts code points") {
  CHECK(truncate_utf8("abcdef", 3) == "abc");
  CHECK(truncate_utf8("h\xC3\xA9llo", 2) == "h\xC3\xA9");
  CHECK(truncate_utf8("\xE2\x82\xAC\xE2\x82\xAC", 1) == "\xE2\x82\xAC");
  CHECK(truncate_utf8("ab", 10) == "ab");
  CHECK(truncate_utf8("ab", 0).empty());
}

TEST_CASE("hashing embedder is deterministic and lexical") {
  HashingEmbedder e(64);
  CHECK(e.fingerprint() == "hashing-bow:64");
  const std::vector<std::string> texts = {"The Eiffel Tower in Paris", "the eiffel tower, in paris!",
                                          "Coffee contains caffeine", "..."};
  const auto a = embed_texts(e, texts);
  const auto b = embed_texts(e, texts);
  CHECK(a == b);
  CHECK(a[0].dot(a[1]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(a[0].dot(a[2]) < 0.5);
  CHECK(a[3].norm() == doctest::Approx(1.0).epsilon(1e-6));  // token-free text still embeds
  CHECK_THROWS_AS(HashingEmbedder(1), ValidationError);
}

TEST_CASE("embed_texts batching and provider checks") {
  auto e = axis_embedder();
  EmbedOptions opts;
  opts.batch_size = 2;
  std::vector<std::string> texts = {"a", "b", "c", "d", "e"};
  const auto out = embed_texts(e, texts, opts);
  CHECK(out.size() == 5);
  CHECK(e.batch_calls() == 3);
  CHECK(out[4].values()[0] == 1.0f);

  CHECK(embed_texts(e, std::vector<std::string>{}).empty());
  CHECK(e.batch_calls() == 3);
  CHECK_THROWS_AS(embed_texts(e, std::vector<std::string>{""}), ValidationError);

  FunctionEmbedder wrong_dim("bad", 3, [](const std::string&) { return std::vector<float>{1, 0}; });
  CHECK_THROWS_AS(embed_texts(wrong_dim, std::vector<std::string>{"x"}), ProtocolError);
}

TEST_CASE("search ranks by cosine with doc_id tie-break") {
  VectorIndex index(2, "t:2");
  index.add("b", EmbeddingVector::normalized({1, 0}));
  index.add("a", EmbeddingVector::normalized({1, 0}));
  index.add("c", EmbeddingVector::normalized({0, 1}));
  index.add("d", EmbeddingVector::normalized({1, 1}));
  const auto hits = search(index, EmbeddingVector::normalized({1, 0}), 3);
  REQUIRE(hits.size() == 3);
  CHECK(hits[0].doc_id == "a");
  CHECK(hits[1].doc_id == "b");
  CHECK(hits[2].doc_id == "d");
  CHECK(hits[2].score == doctest::Approx(std::sqrt(0.5)));

  CHECK(search(index, EmbeddingVector::normalized({0, 1}), 10).size() == 4);
  CHECK_THROWS_AS(search(index, EmbeddingVector::normalized({0, 1}), 0), ValidationError);
  CHECK_THROWS_AS(search(index, EmbeddingVector::normalized({0, 1, 0}), 1), ValidationError);
  CHECK_THROWS_AS(index.add("a", EmbeddingVector::normalized({1, 0})), ValidationError);
  CHECK_THROWS_AS(index.add("z", EmbeddingVector::normalized({1, 0, 0})), ValidationError);
}

TEST_CASE("search matches brute force on random data") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + trial % 7;
    VectorIndex index(dim, "r");
    std::vector<std::pair<std::string, std::vector<float>>> raw;
    for (int i = 0; i < 60; ++i) {
      std::vector<float> v(dim);
      for (auto& x : v) x = u(rng);
      raw.push_back({"d" + std::to_string(i), v});
      index.add(raw.back().first, EmbeddingVector::normalized(v));
    }
    std::vector<float> q(dim);
    for (auto& x : q) x = u(rng);
    const auto hits = search(index, EmbeddingVector::normalized(q), 5);

    std::vector<std::pair<double, std::string>> expected;
    for (const auto& [id, v] : raw) {
      double dot = 0, nq = 0, nv = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        dot += double(q[k]) * v[k];
        nq += double(q[k]) * q[k];
        nv += double(v[k]) * v[k];
      }
      expected.push_back({-dot / std::sqrt(nq * nv), id});
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t r = 0; r < 5; ++r) CHECK(hits[r].doc_id == expected[r].second);
  }
}

TEST_CASE("build_index and retrieve_for_claim") {
  auto e = axis_embedder();
  const auto docs = docs_of({"apple", "banana", "cherry", "avocado"});
  const auto index = build_index(docs, e);
  CHECK(index.size() == 4);
  CHECK(index.fingerprint() == "axis:4");

  ClaimRecord claim{0, "almond", VerdictLabel::Supported, {}, std::nullopt};
  const auto top = retrieve_for_claim(claim, index, docs, e, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].text == "apple");  // ties on score resolve by doc id 0/0 < 0/3
  CHECK(top[1].text == "avocado");

  CHECK_THROWS_AS(build_index({}, e), ValidationError);
  auto dup = docs;
  dup[1].doc_id = dup[0].doc_id;
  CHECK_THROWS_AS(build_index(dup, e), ValidationError);
}

TEST_CASE("index files round trip and detect staleness") {
  TempDir dir;
  HashingEmbedder e(32);
  const auto docs = docs_of({"alpha beta", "gamma delta", "epsilon \xC3\xA9t\xC3\xA9"});
  const auto index = build_index(docs, e);
  index.save(dir / "i.vidx");
  const auto bytes = slurp(dir / "i.vidx");
  CHECK(bytes.substr(0, 4) == "VTXI");

  const auto loaded = VectorIndex::load(dir / "i.vidx", e.fingerprint());
  CHECK(loaded.serialize() == index.serialize());
  REQUIRE(loaded.entries().size() == 3);
  CHECK(loaded.entries()[2].doc_id == "0/2");
  CHECK(loaded.entries()[2].vector == index.entries()[2].vector);
  CHECK(VectorIndex::read_fingerprint(dir / "i.vidx") == "hashing-bow:32");

  build_index(docs, e).save(dir / "j.vidx");
  CHECK(slurp(dir / "j.vidx") == bytes);

  CHECK_THROWS_AS(VectorIndex::load(dir / "i.vidx", "hashing-bow:64"), ValidationError);
  CHECK_THROWS_AS(VectorIndex::deserialize(bytes.substr(0, bytes.size() - 3)), ParseError);
  CHECK_THROWS_AS(VectorIndex::deserialize(bytes + "x"), ParseError);
  CHECK_THROWS_AS(VectorIndex::deserialize("NOPE" + bytes.substr(4)), ParseError);
  CHECK_THROWS_AS(VectorIndex::load(dir / "missing.vidx"), NotFoundError);
}
