#include "veritas_app/run_config.hpp"

#include <cstdlib>
#include <set>

#include "veritas/error.hpp"
#include "veritas/prompt_assets.hpp"
#include "veritas_app/toml_lite.hpp"

namespace veritas::app {
namespace {

using TomlJson = nlohmann::ordered_json;

class Section {
 public:
  Section(const TomlJson& doc, std::string name) : name_(std::move(name)) {
    const TomlJson* node = &doc;
    std::size_t start = 0;
    while (start <= name_.size()) {
      const auto dot = name_.find('.', start);
      const auto part = name_.substr(start, dot == std::string::npos ? dot : dot - start);
      if (!node->contains(part)) {
        node_ = nullptr;
        return;
      }
      node = &(*node)[part];
      if (!node->is_object()) throw ValidationError("[" + name_ + "] must be a table");
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    node_ = node;
  }

  // Rejects keys that no getter asked for.
  void finish(const std::set<std::string>& children = {}) const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!used_.count(key) && !children.count(key)) {
        throw ValidationError("unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    used_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    try {
      out = (*node_)[key].template get<T>();
    } catch (const TomlJson::exception&) {
      throw ValidationError("[" + name_ + "] " + key + " has the wrong type");
    }
  }

  template <typename T>
  void get(const char* key, std::optional<T>& out) {
    T value{};
    used_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    get(key, value);
    out = std::move(value);
  }

  void get_count(const char* key, std::size_t& out) {
    std::int64_t value = static_cast<std::int64_t>(out);
    get(key, value);
    if (value < 0) throw ValidationError("[" + name_ + "] " + key + " must not be negative");
    out = static_cast<std::size_t>(value);
  }

  void get_path(const char* key, fs::path& out, const fs::path& base) {
    std::string value;
    used_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    get(key, value);
    out = base / value;
  }

  void get_path(const char* key, std::optional<fs::path>& out, const fs::path& base) {
    fs::path value;
    used_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    get_path(key, value, base);
    out = std::move(value);
  }

 private:
  std::string name_;
  const TomlJson* node_ = nullptr;
  std::set<std::string> used_;
};

void read_stage(const TomlJson& doc, const std::string& name, StageSection& stage,
                std::size_t* document_char_budget) {
  Section s(doc, "stages." + name);
  s.get("model", stage.model);
  s.get("temperature", stage.decode.temperature);
  s.get("max_output_tokens", stage.decode.max_output_tokens);
  s.get("seed", stage.decode.seed);
  s.get("stop", stage.decode.stop_sequences);
  if (document_char_budget) s.get_count("document_char_budget", *document_char_budget);
  s.finish();
}

Json decode_json(const DecodeConfig& d) {
  Json j;
  j["temperature"] = d.temperature;
  j["max_output_tokens"] = d.max_output_tokens;
  j["seed"] = d.seed ? Json(*d.seed) : Json(nullptr);
  j["stop"] = d.stop_sequences;
  return j;
}

Json optional_path(const std::optional<fs::path>& p) {
  return p ? Json(p->generic_string()) : Json(nullptr);
}

}  // namespace

RetryPolicy RunConfig::retry() const {
  RetryPolicy policy;
  policy.max_attempts = max_attempts;
  policy.initial_backoff = std::chrono::milliseconds(initial_backoff_ms);
  return policy;
}

eval::EvalConfig RunConfig::eval_config() const {
  eval::EvalConfig config;
  config.qa_threshold = qa_threshold;
  config.top_k = eval_top_k;
  config.dedupe_questions = dedupe_questions;
  return config;
}

EvidenceSettings RunConfig::evidence_settings() const {
  EvidenceSettings s;
  if (prompts_dir) s.templates = load_prompt_templates(*prompts_dir);
  if (question_exemplars) s.exemplars = load_question_exemplars(*question_exemplars);
  s.question = {stage_model(question), question.decode};
  s.answer = {stage_model(answer), answer.decode};
  s.document_char_budget = document_char_budget;
  s.top_k = top_k;
  s.retry = retry();
  s.embed.char_budget = embed.char_budget;
  s.embed.batch_size = embed.batch_size;
  s.embed.retry = retry();
  return s;
}

ClassifierSettings RunConfig::classifier_settings() const {
  ClassifierSettings s;
  if (prompts_dir) s.template_text = load_prompt_templates(*prompts_dir).classify;
  if (classify_exemplars) s.exemplars = load_classify_exemplars(*classify_exemplars);
  s.stage = {stage_model(classify), classify.decode};
  s.retry = retry();
  return s;
}

void RunConfig::validate() const {
  if (top_k < 1) throw ValidationError("top_k must be at least 1");
  if (workers < 1) throw ValidationError("workers must be at least 1");
  if (llm.inflight < 1) throw ValidationError("[llm] inflight must be at least 1");
  if (max_attempts < 1) throw ValidationError("[retry] max_attempts must be at least 1");
  if (initial_backoff_ms < 0) throw ValidationError("[retry] initial_backoff_ms must not be negative");
  if (!(qa_threshold >= 0.0 && qa_threshold <= 1.0)) {
    throw ValidationError("qa_threshold must be within [0, 1]");
  }
  if (embed.provider != "ollama" && embed.provider != "hashing") {
    throw ValidationError("[embed] provider must be 'ollama' or 'hashing'");
  }
  if (embed.batch_size < 1 || embed.char_budget < 1) {
    throw ValidationError("[embed] batch_size and char_budget must be at least 1");
  }
  if (embed.timeout_s < 1 || llm.timeout_s < 1) throw ValidationError("timeouts must be positive");
  if (document_char_budget < 1) throw ValidationError("document_char_budget must be at least 1");
  for (const auto* stage : {&question, &answer, &classify}) {
    if (stage->decode.temperature < 0.0) throw ValidationError("temperature must not be negative");
    if (stage->decode.max_output_tokens < 1) {
      throw ValidationError("max_output_tokens must be at least 1");
    }
  }
}

RunConfig run_config_from_toml(const TomlJson& doc, const fs::path& base_dir) {
  static const std::set<std::string> kSections = {"data",  "output",   "embed", "llm",   "retry",
                                                  "stages", "pipeline", "eval",  "prompts"};
  for (const auto& [key, value] : doc.items()) {
    if (!kSections.count(key)) throw ValidationError("unknown config section [" + key + "]");
  }

  RunConfig c;
  c.output_dir = base_dir / c.output_dir;

  Section data(doc, "data");
  data.get_path("claims", c.claims, base_dir);
  data.get_path("knowledge_store", c.knowledge_store, base_dir);
  data.finish();

  Section output(doc, "output");
  output.get_path("dir", c.output_dir, base_dir);
  output.get_path("index_dir", c.index_dir, base_dir);
  output.finish();

  Section embed(doc, "embed");
  embed.get("provider", c.embed.provider);
  embed.get("url", c.embed.url);
  embed.get("model", c.embed.model);
  embed.get_count("dim", c.embed.dim);
  embed.get_count("char_budget", c.embed.char_budget);
  embed.get_count("batch_size", c.embed.batch_size);
  embed.get("timeout_s", c.embed.timeout_s);
  embed.finish();

  Section llm(doc, "llm");
  llm.get("url", c.llm.url);
  llm.get("model", c.llm.model);
  llm.get("timeout_s", c.llm.timeout_s);
  llm.get_count("inflight", c.llm.inflight);
  llm.finish();

  Section retry(doc, "retry");
  retry.get("max_attempts", c.max_attempts);
  retry.get("initial_backoff_ms", c.initial_backoff_ms);
  retry.finish();

  Section stages(doc, "stages");
  stages.finish({"question", "answer", "classify"});
  read_stage(doc, "question", c.question, nullptr);
  read_stage(doc, "answer", c.answer, &c.document_char_budget);
  read_stage(doc, "classify", c.classify, nullptr);

  Section pipeline(doc, "pipeline");
  pipeline.get_count("top_k", c.top_k);
  pipeline.get_count("workers", c.workers);
  pipeline.get("limit", c.limit);
  pipeline.finish();

  Section eval(doc, "eval");
  eval.get("qa_threshold", c.qa_threshold);
  eval.get_count("top_k", c.eval_top_k);
  eval.get("dedupe_questions", c.dedupe_questions);
  eval.finish();

  Section prompts(doc, "prompts");
  prompts.get_path("dir", c.prompts_dir, base_dir);
  prompts.get_path("question_exemplars", c.question_exemplars, base_dir);
  prompts.get_path("classify_exemplars", c.classify_exemplars, base_dir);
  prompts.finish();
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  const auto doc = load_toml(path);
  return run_config_from_toml(doc, path.parent_path());
}

void apply_env_overrides(RunConfig& config) {
  if (const char* url = std::getenv("VERITAS_EMBED_URL"); url && *url) config.embed.url = url;
  if (const char* url = std::getenv("VERITAS_LLM_URL"); url && *url) config.llm.url = url;
}

void require_exists(const fs::path& path, std::string_view what) {
  if (path.empty()) throw ValidationError(std::string(what) + " path is not configured");
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw NotFoundError(std::string(what) + " not found: " + path.string());
  }
}

Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["data"] = {{"claims", c.claims.generic_string()},
               {"knowledge_store", c.knowledge_store.generic_string()}};
  j["output"] = {{"dir", c.output_dir.generic_string()},
                 {"index_dir", c.resolved_index_dir().generic_string()}};
  j["embed"] = {{"provider", c.mock_embed ? "hashing" : c.embed.provider},
                {"url", c.embed.url},
                {"model", c.mock_embed || c.embed.provider == "hashing" ? std::string("hashing-bow") : c.embed.model},
                {"dim", c.embed.dim},
                {"char_budget", c.embed.char_budget},
                {"batch_size", c.embed.batch_size},
                {"timeout_s", c.embed.timeout_s}};
  j["llm"] = {{"url", c.llm.url},
              {"model", c.llm.model},
              {"timeout_s", c.llm.timeout_s},
              {"inflight", c.llm.inflight},
              {"mock_script", optional_path(c.mock_script)}};
  j["retry"] = {{"max_attempts", c.max_attempts}, {"initial_backoff_ms", c.initial_backoff_ms}};
  Json stages;
  stages["question"] = {{"model", c.stage_model(c.question)}, {"decode", decode_json(c.question.decode)}};
  stages["answer"] = {{"model", c.stage_model(c.answer)},
                      {"decode", decode_json(c.answer.decode)},
                      {"document_char_budget", c.document_char_budget}};
  stages["classify"] = {{"model", c.stage_model(c.classify)}, {"decode", decode_json(c.classify.decode)}};
  j["stages"] = std::move(stages);
  j["pipeline"] = {{"top_k", c.top_k},
                   {"workers", c.workers},
                   {"limit", c.limit ? Json(*c.limit) : Json(nullptr)}};
  j["eval"] = {{"qa_threshold", c.qa_threshold},
               {"top_k", c.eval_top_k},
               {"dedupe_questions", c.dedupe_questions}};
  j["prompts"] = {{"dir", optional_path(c.prompts_dir)},
                  {"question_exemplars", optional_path(c.question_exemplars)},
                  {"classify_exemplars", optional_path(c.classify_exemplars)}};
  return j;
}

}  // namespace veritas::app
