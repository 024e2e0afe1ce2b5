#pragma once

#include <filesystem>
#include <memory>
#include <ostream>

#include "veritas/embedding.hpp"
#include "veritas/llm_gateway.hpp"
#include "veritas_app/logger.hpp"
#include "veritas_app/run_config.hpp"

namespace veritas::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailures = 1;
inline constexpr int kExitConfigError = 2;

inline constexpr const char* kEvidenceFile = "evidence.jsonl";
inline constexpr const char* kPredictionsFile = "predictions.jsonl";
inline constexpr const char* kErrorsFile = "errors.jsonl";
inline constexpr const char* kRunConfigFile = "run_config.json";

// <index_dir>/<claim_id>.vidx
fs::path index_file(const RunConfig& config, ClaimId claim_id);

struct Providers {
  std::shared_ptr<EmbeddingProvider> embedder;
  std::shared_ptr<LlmProvider> llm;
  bool ordinal_script = false;  // responses depend on call order
};

// Builds the configured providers: Ollama clients, or the hashing embedder
// and a scripted LLM when the mock options are set.
Providers make_providers(const RunConfig& config);

// Loads claims, honouring config.limit.
std::vector<ClaimRecord> load_config_claims(const RunConfig& config);

// Builds one index per claim, skipping indexes whose fingerprint matches the
// provider. Returns an exit code.
int index_claims(const RunConfig& config, EmbeddingProvider& embedder, Logger& log);

// retrieve -> evidence -> classify for every claim not already finished in
// the output directory; artifacts are committed in claim order. Returns an
// exit code.
int run_claims(const RunConfig& config, Providers& providers, Logger& log);

// Scores predictions against gold and writes report.json, report.txt and
// per_claim.csv to out_dir. Prints the headline to `out`.
int evaluate_predictions(const RunConfig& config, const fs::path& predictions,
                         const fs::path& gold, const fs::path& out_dir, Logger& log,
                         std::ostream& out);

// Re-renders report.txt content from a report.json.
int render_report(const fs::path& report_json, std::ostream& out);

}  // namespace veritas::app
