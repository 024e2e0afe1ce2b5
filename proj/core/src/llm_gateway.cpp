#include "veritas/llm_gateway.hpp"

#include <openssl/evp.h>

#include <chrono>

#include "http_transport.hpp"
#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas {
namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0x0F];
  }
  return out;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

Json canonical_request(const PromptRequest& request) {
  Json decode = Json::object();
  decode["temperature"] = request.decode.temperature;
  decode["max_output_tokens"] = request.decode.max_output_tokens;
  decode["seed"] = request.decode.seed ? Json(*request.decode.seed) : Json(nullptr);
  decode["stop"] = request.decode.stop_sequences;

  Json j = Json::object();
  j["model"] = request.model;
  j["system"] = request.system_text ? Json(*request.system_text) : Json(nullptr);
  j["user"] = request.user_text;
  j["decode"] = std::move(decode);
  return j;
}

std::string request_digest(const PromptRequest& request) {
  return sha256_hex(dump_line(canonical_request(request)));
}

OllamaChatProvider::OllamaChatProvider(Options options) : options_(std::move(options)) {
  detail::parse_endpoint(options_.base_url);
}

nlohmann::json OllamaChatProvider::build_chat_body(const PromptRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  if (request.system_text) {
    messages.push_back({{"role", "system"}, {"content", *request.system_text}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user_text}});

  nlohmann::json options = {{"temperature", request.decode.temperature},
                            {"num_predict", request.decode.max_output_tokens}};
  if (request.decode.seed) options["seed"] = *request.decode.seed;
  if (!request.decode.stop_sequences.empty()) options["stop"] = request.decode.stop_sequences;

  return {{"model", request.model},
          {"messages", std::move(messages)},
          {"stream", false},
          {"options", std::move(options)}};
}

std::string OllamaChatProvider::complete_raw(const PromptRequest& request) {
  const auto endpoint = detail::parse_endpoint(options_.base_url);
  const auto body = build_chat_body(request).dump(-1, ' ', false,
                                                  nlohmann::json::error_handler_t::replace);
  InflightLimiter::Slot slot(options_.limiter.get());
  const auto response_text = detail::post_json(endpoint, "/api/chat", body, options_.timeout);
  try {
    const auto response = nlohmann::json::parse(response_text);
    return response.at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed chat response: ") + e.what());
  }
}

ScriptedProvider::ScriptedProvider(Script script) : script_(std::move(script)) {}

std::string ScriptedProvider::complete_raw(const PromptRequest& request) {
  const auto digest = request_digest(request);
  std::lock_guard lock(mutex_);
  const std::size_t ordinal = calls_.size() + 1;

  const std::string* response = nullptr;
  if (auto it = script_.by_digest.find(digest); it != script_.by_digest.end()) {
    response = &it->second;
  } else if (auto it2 = script_.by_ordinal.find(ordinal); it2 != script_.by_ordinal.end()) {
    response = &it2->second;
  }
  if (!response) {
    throw UnknownPromptError("no scripted response for call #" + std::to_string(ordinal) +
                             " (digest " + digest + ")");
  }
  calls_.push_back(Call{ordinal, digest, request, *response});
  return *response;
}

std::vector<ScriptedProvider::Call> ScriptedProvider::call_log() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

std::size_t ScriptedProvider::call_count() const {
  std::lock_guard lock(mutex_);
  return calls_.size();
}

ScriptedProvider::Script ScriptedProvider::parse_script(const Json& json) {
  Script script;
  try {
    if (json.is_array()) {
      for (std::size_t i = 0; i < json.size(); ++i) {
        script.by_ordinal[i + 1] = json[i].get<std::string>();
      }
      return script;
    }
    if (!json.is_object()) throw ValidationError("mock script must be an object or array");
    if (json.contains("ordinal")) {
      for (const auto& [key, value] : json.at("ordinal").items()) {
        std::size_t pos = 0;
        const auto ordinal = std::stoull(key, &pos);
        if (pos != key.size() || ordinal == 0) {
          throw ValidationError("mock script ordinal keys must be positive integers: " + key);
        }
        script.by_ordinal[ordinal] = value.get<std::string>();
      }
    }
    if (json.contains("digest")) {
      for (const auto& [key, value] : json.at("digest").items()) {
        script.by_digest[key] = value.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed mock script: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("mock script ordinal keys must be positive integers");
  }
  return script;
}

ScriptedProvider::Script ScriptedProvider::load_script(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return parse_script(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
}

std::shared_ptr<ScriptedProvider> make_mock_provider(ScriptedProvider::Script script) {
  return std::make_shared<ScriptedProvider>(std::move(script));
}

CompletionResult complete(LlmProvider& provider, const PromptRequest& request,
                          const RetryPolicy& retry) {
  if (request.user_text.empty()) throw ValidationError("prompt user_text is empty");
  if (!(request.decode.temperature >= 0.0)) {
    throw ValidationError("temperature must be >= 0");
  }
  if (request.decode.max_output_tokens <= 0) {
    throw ValidationError("max_output_tokens must be positive");
  }

  CompletionResult result;
  result.request_digest = request_digest(request);
  const auto start = std::chrono::steady_clock::now();
  result.text = with_retries(retry, [&] { return provider.complete_raw(request); });
  result.provider_latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
  if (is_blank(result.text)) {
    throw EmptyOutputError("provider returned an empty completion (digest " +
                           result.request_digest + ")");
  }
  return result;
}

}  // namespace veritas
