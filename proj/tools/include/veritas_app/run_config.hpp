#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "veritas/eval/scoring.hpp"
#include "veritas/evidence_pipeline.hpp"
#include "veritas/llm_gateway.hpp"
#include "veritas/records.hpp"
#include "veritas/retry.hpp"
#include "veritas/verdict_classifier.hpp"

namespace veritas::app {

namespace fs = std::filesystem;

struct EmbedSection {
  std::string provider = "ollama";  // ollama | hashing
  std::string url = "http://localhost:11434";
  std::string model = "dunzhang/stella_en_1.5B_v5";
  std::size_t dim = 0;  // 0: probe (ollama) or 256 (hashing)
  std::size_t char_budget = 8000;
  std::size_t batch_size = 32;
  int timeout_s = 120;
};

struct LlmSection {
  std::string url = "http://localhost:11434";
  std::string model = "mixtral:8x22b";  // default for every stage
  int timeout_s = 600;
  std::size_t inflight = 1;  // concurrent requests across all stages
};

struct StageSection {
  std::optional<std::string> model;  // falls back to [llm] model
  DecodeConfig decode;
};

struct RunConfig {
  fs::path claims;
  fs::path knowledge_store;
  fs::path output_dir = "out";
  std::optional<fs::path> index_dir;  // default <output_dir>/index

  EmbedSection embed;
  LlmSection llm;
  StageSection question{std::nullopt, DecodeConfig{0.0, 128, std::nullopt, {}}};
  StageSection answer{std::nullopt, DecodeConfig{0.0, 256, std::nullopt, {}}};
  StageSection classify{std::nullopt, DecodeConfig{0.0, 16, std::nullopt, {}}};
  std::size_t document_char_budget = 12000;

  int max_attempts = 3;
  int initial_backoff_ms = 250;

  std::size_t top_k = 3;
  std::size_t workers = 1;
  std::optional<std::size_t> limit;  // first N claims only

  double qa_threshold = 0.25;
  std::size_t eval_top_k = 3;
  bool dedupe_questions = true;

  std::optional<fs::path> prompts_dir;
  std::optional<fs::path> question_exemplars;
  std::optional<fs::path> classify_exemplars;

  // Command-line only.
  std::optional<fs::path> mock_script;
  bool mock_embed = false;
  std::optional<std::size_t> stop_after;  // test hook: commit N claims, then stop

  fs::path resolved_index_dir() const { return index_dir ? *index_dir : output_dir / "index"; }
  std::string stage_model(const StageSection& stage) const {
    return stage.model ? *stage.model : llm.model;
  }
  RetryPolicy retry() const;
  eval::EvalConfig eval_config() const;
  EvidenceSettings evidence_settings() const;
  ClassifierSettings classifier_settings() const;

  // Range checks; throws ValidationError.
  void validate() const;
};

// Reads the TOML file. Relative paths resolve against the file's directory;
// unknown sections or keys are rejected.
RunConfig load_run_config(const fs::path& path);
RunConfig run_config_from_toml(const nlohmann::ordered_json& doc, const fs::path& base_dir);

// VERITAS_EMBED_URL and VERITAS_LLM_URL, when set, replace the endpoints.
void apply_env_overrides(RunConfig& config);

// Throws NotFoundError naming the first missing input path.
void require_exists(const fs::path& path, std::string_view what);

// Resolved configuration as written to <output_dir>/run_config.json.
Json run_config_to_json(const RunConfig& config);

}  // namespace veritas::app
