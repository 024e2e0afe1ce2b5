#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/inflight_limiter.hpp"
#include "veritas/retry.hpp"

namespace veritas {

// Dense vector with finite entries. Vectors produced by embed_texts are
// L2-normalized.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  // Throws ValidationError on empty input or non-finite entries.
  explicit EmbeddingVector(std::vector<float> values);

  // Validates and scales to unit L2 norm. A zero vector cannot be
  // normalized and throws ValidationError.
  static EmbeddingVector normalized(std::vector<float> raw);

  std::size_t dim() const { return values_.size(); }
  std::span<const float> values() const { return values_; }
  double norm() const;

  // Accumulated in double, in index order.
  double dot(const EmbeddingVector& other) const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<float> values_;
};

// Source of raw (unnormalized) embeddings. Implementations must be safe to
// call from several threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::string model_name() const = 0;
  // Advertised dimension. May contact the backend once to discover it.
  virtual std::size_t dim() = 0;
  // One raw vector per text, in order. Transport failures throw
  // TransportError; callers add retries.
  virtual std::vector<std::vector<float>> embed_batch(std::span<const std::string> texts) = 0;

  // Identifies model and dimension; stored in persisted indexes.
  std::string fingerprint();
};

// Deterministic offline embedder: hashed bag of lowercased tokens.
// Identical texts embed identically and shared vocabulary raises cosine
// similarity, which makes it usable for fixtures and dry runs.
class HashingEmbedder final : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dim = 256);

  std::string model_name() const override { return "hashing-bow"; }
  std::size_t dim() override { return dim_; }
  std::vector<std::vector<float>> embed_batch(std::span<const std::string> texts) override;

 private:
  std::size_t dim_;
};

// Wraps a callable; counts calls. Used by tests to script embeddings.
class FunctionEmbedder final : public EmbeddingProvider {
 public:
  using Fn = std::function<std::vector<float>(const std::string& text)>;

  FunctionEmbedder(std::string model, std::size_t dim, Fn fn);

  std::string model_name() const override { return model_; }
  std::size_t dim() override { return dim_; }
  std::vector<std::vector<float>> embed_batch(std::span<const std::string> texts) override;

  std::size_t batch_calls() const { return batch_calls_.load(); }

 private:
  std::string model_;
  std::size_t dim_;
  Fn fn_;
  std::atomic<std::size_t> batch_calls_{0};
};

// Client for an Ollama-compatible /api/embed endpoint.
class OllamaEmbedder final : public EmbeddingProvider {
 public:
  struct Options {
    std::string base_url = "http://localhost:11434";
    std::string model = "dunzhang/stella_en_1.5B_v5";
    std::size_t dim = 0;  // 0: discovered with a one-text probe request
    std::chrono::seconds timeout{120};
    std::shared_ptr<InflightLimiter> limiter;  // optional
  };

  explicit OllamaEmbedder(Options options);

  std::string model_name() const override { return options_.model; }
  std::size_t dim() override;
  std::vector<std::vector<float>> embed_batch(std::span<const std::string> texts) override;

 private:
  Options options_;
  std::mutex dim_mutex_;
  std::optional<std::size_t> dim_;
};

struct EmbedOptions {
  std::size_t char_budget = 8000;  // code points kept per text
  std::size_t batch_size = 32;
  RetryPolicy retry;
};

// Truncates to at most `max_code_points` UTF-8 code points without
// splitting a multi-byte sequence.
std::string truncate_utf8(std::string_view text, std::size_t max_code_points);

// Embeds and normalizes `texts`, in order. An empty list makes no provider
// call. Transport errors are retried per options.retry; a vector whose size
// differs from provider.dim() or a count mismatch throws ProtocolError.
std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         std::span<const std::string> texts,
                                         const EmbedOptions& options = {});

}  // namespace veritas
