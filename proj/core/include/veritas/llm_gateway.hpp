#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "veritas/inflight_limiter.hpp"
#include "veritas/records.hpp"
#include "veritas/retry.hpp"

namespace veritas {

// Greedy decoding (temperature 0) is the default for every stage.
struct DecodeConfig {
  double temperature = 0.0;
  int max_output_tokens = 256;
  std::optional<std::int64_t> seed;
  std::vector<std::string> stop_sequences;

  bool operator==(const DecodeConfig&) const = default;
};

struct PromptRequest {
  std::optional<std::string> system_text;
  std::string user_text;
  DecodeConfig decode;
  std::string model;

  bool operator==(const PromptRequest&) const = default;
};

struct CompletionResult {
  std::string text;  // untrimmed
  std::int64_t provider_latency_ms = 0;
  std::string request_digest;
};

// Canonical JSON form of a request; the digest is its SHA-256 (hex).
Json canonical_request(const PromptRequest& request);
std::string request_digest(const PromptRequest& request);

// A text-generation backend. complete_raw is a single attempt; retries and
// output checks live in complete().
class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  virtual std::string complete_raw(const PromptRequest& request) = 0;
};

// Ollama-compatible /api/chat client (non-streaming).
class OllamaChatProvider final : public LlmProvider {
 public:
  struct Options {
    std::string base_url = "http://localhost:11434";
    std::chrono::seconds timeout{600};
    std::shared_ptr<InflightLimiter> limiter;  // optional
  };

  explicit OllamaChatProvider(Options options);

  std::string complete_raw(const PromptRequest& request) override;

  // Request body sent for `request`; exposed for inspection in tests.
  static nlohmann::json build_chat_body(const PromptRequest& request);

 private:
  Options options_;
};

// Serves completions from a fixed script, keyed by request digest or by the
// 1-based call ordinal (digest wins). Anything unscripted throws
// UnknownPromptError, so tests must enumerate every expected call.
class ScriptedProvider final : public LlmProvider {
 public:
  struct Script {
    std::map<std::size_t, std::string> by_ordinal;
    std::map<std::string, std::string> by_digest;
  };

  struct Call {
    std::size_t ordinal = 0;
    std::string digest;
    PromptRequest request;
    std::string response;
  };

  explicit ScriptedProvider(Script script);

  std::string complete_raw(const PromptRequest& request) override;

  std::vector<Call> call_log() const;
  std::size_t call_count() const;

  // {"ordinal": {"1": "...", ...}, "digest": {"<sha256>": "...", ...}}
  // A top-level array is shorthand for ordinal responses 1..n.
  static Script parse_script(const Json& json);
  static Script load_script(const std::filesystem::path& path);

 private:
  Script script_;
  mutable std::mutex mutex_;
  std::vector<Call> calls_;
};

std::shared_ptr<ScriptedProvider> make_mock_provider(ScriptedProvider::Script script);

// Issues one completion. Transport failures are retried per `retry`
// (default 3 attempts, exponential backoff); a whitespace-only completion
// throws EmptyOutputError.
CompletionResult complete(LlmProvider& provider, const PromptRequest& request,
                          const RetryPolicy& retry = {});

}  // namespace veritas
