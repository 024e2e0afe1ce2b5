#include "veritas/embedding.hpp"

#include <cmath>
#include <cstdint>

#include "http_transport.hpp"
#include "veritas/error.hpp"
#include "veritas/eval/text.hpp"
#include "veritas/records.hpp"

namespace veritas {
namespace {

void check_finite(std::span<const float> values) {
  for (float v : values) {
    if (!std::isfinite(v)) throw ValidationError("embedding contains a non-finite entry");
  }
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<float> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("embedding has zero dimensions");
  check_finite(values_);
}

EmbeddingVector EmbeddingVector::normalized(std::vector<float> raw) {
  EmbeddingVector v(std::move(raw));
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("cannot normalize a zero-norm embedding");
  }
  for (auto& x : v.values_) x = static_cast<float>(x / n);
  return v;
}

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (float x : values_) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

double EmbeddingVector::dot(const EmbeddingVector& other) const {
  if (other.dim() != dim()) {
    throw ValidationError("dimension mismatch: " + std::to_string(dim()) + " vs " +
                          std::to_string(other.dim()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    sum += static_cast<double>(values_[i]) * other.values_[i];
  }
  return sum;
}

std::string EmbeddingProvider::fingerprint() {
  return model_name() + ":" + std::to_string(dim());
}

HashingEmbedder::HashingEmbedder(std::size_t dim) : dim_(dim) {
  if (dim_ < 2) throw ValidationError("hashing embedder needs dim >= 2");
}

std::vector<std::vector<float>> HashingEmbedder::embed_batch(std::span<const std::string> texts) {
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    std::vector<float> v(dim_, 0.0f);
    const auto tokens = eval::tokenize(text);
    // The last slot is reserved so token-free texts still have a direction.
    for (const auto& token : tokens) v[fnv1a(token) % (dim_ - 1)] += 1.0f;
    if (tokens.empty()) v[dim_ - 1] = 1.0f;
    out.push_back(std::move(v));
  }
  return out;
}

FunctionEmbedder::FunctionEmbedder(std::string model, std::size_t dim, Fn fn)
    : model_(std::move(model)), dim_(dim), fn_(std::move(fn)) {}

std::vector<std::vector<float>> FunctionEmbedder::embed_batch(std::span<const std::string> texts) {
  ++batch_calls_;
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(fn_(text));
  return out;
}

OllamaEmbedder::OllamaEmbedder(Options options) : options_(std::move(options)) {
  detail::parse_endpoint(options_.base_url);
  if (options_.dim > 0) dim_ = options_.dim;
}

std::size_t OllamaEmbedder::dim() {
  std::lock_guard lock(dim_mutex_);
  if (!dim_) {
    const std::string probe[] = {"dimension probe"};
    auto vectors = embed_batch(probe);
    if (vectors.size() != 1 || vectors.front().empty()) {
      throw ProtocolError("embedding probe returned no vector");
    }
    dim_ = vectors.front().size();
  }
  return *dim_;
}

std::vector<std::vector<float>> OllamaEmbedder::embed_batch(std::span<const std::string> texts) {
  const auto endpoint = detail::parse_endpoint(options_.base_url);
  InflightLimiter::Slot slot(options_.limiter.get());
  nlohmann::json request = {{"model", options_.model},
                            {"input", std::vector<std::string>(texts.begin(), texts.end())}};
  const std::string body = detail::post_json(
      endpoint, "/api/embed", request.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
      options_.timeout);

  try {
    const auto response = nlohmann::json::parse(body);
    return response.at("embeddings").get<std::vector<std::vector<float>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed embedding response: ") + e.what());
  }
}

std::string truncate_utf8(std::string_view text, std::size_t max_code_points) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto byte = static_cast<unsigned char>(text[i]);
    if ((byte & 0xC0) != 0x80) {
      if (count == max_code_points) return std::string(text.substr(0, i));
      ++count;
    }
  }
  return std::string(text);
}

std::vector<EmbeddingVector> embed_texts(EmbeddingProvider& provider,
                                         std::span<const std::string> texts,
                                         const EmbedOptions& options) {
  std::vector<EmbeddingVector> out;
  if (texts.empty()) return out;
  for (const auto& t : texts) {
    if (t.empty()) throw ValidationError("cannot embed an empty text");
  }

  const std::size_t dim = with_retries(options.retry, [&] { return provider.dim(); });
  const std::size_t batch = options.batch_size == 0 ? texts.size() : options.batch_size;
  out.reserve(texts.size());

  for (std::size_t begin = 0; begin < texts.size(); begin += batch) {
    const std::size_t end = std::min(texts.size(), begin + batch);
    std::vector<std::string> chunk;
    chunk.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      chunk.push_back(truncate_utf8(texts[i], options.char_budget));
    }
    auto raw = with_retries(options.retry, [&] { return provider.embed_batch(chunk); });
    if (raw.size() != chunk.size()) {
      throw ProtocolError("provider returned " + std::to_string(raw.size()) +
                          " vectors for " + std::to_string(chunk.size()) + " texts");
    }
    for (auto& vec : raw) {
      if (vec.size() != dim) {
        throw ProtocolError("provider returned dim " + std::to_string(vec.size()) +
                            ", expected " + std::to_string(dim));
      }
      out.push_back(EmbeddingVector::normalized(std::move(vec)));
    }
  }
  return out;
}

}  // namespace veritas
