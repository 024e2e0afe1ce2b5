#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/evidence_pipeline.hpp"
#include "veritas/llm_gateway.hpp"
#include "veritas/prompt_assets.hpp"
#include "veritas/records.hpp"

namespace veritas {

inline constexpr std::string_view kNoEvidenceMarker = "[no evidence extracted]";
inline constexpr std::string_view kClarifyInstruction =
    "Answer with exactly one of the four class names.";

struct ClassifierSettings {
  std::string template_text = default_prompt_templates().classify;
  std::vector<FewShotExemplar> exemplars = default_classify_exemplars();
  StageSettings stage{"", DecodeConfig{0.0, 16, std::nullopt, {}}};
  RetryPolicy retry;
};

// ["s1", "s2", ...] with JSON string quoting, or the no-evidence marker.
std::string render_statements(std::span<const std::string> statements);

// Instruction block, one Claim / Statements / Class triple per exemplar,
// then the given claim and statements. Exemplars must cover at least two
// distinct labels (ValidationError otherwise).
PromptRequest build_classification_prompt(std::string_view claim,
                                          std::span<const std::string> statements,
                                          std::span<const FewShotExemplar> exemplars,
                                          const ClassifierSettings& settings = {});

// Scans case-insensitively, on word boundaries, for a label name or alias;
// the earliest match wins (longest alias at equal position).
//   supported/support, refuted/refute, not enough evidence/info/information,
//   conflicting evidence/cherrypicking (either spelling), cherrypicking,
//   cherry-picking, conflicting
std::optional<VerdictLabel> try_parse_label(std::string_view raw) noexcept;
// Same scan; throws UnparseableVerdictError when nothing matches.
VerdictLabel parse_label(std::string_view raw);

struct ClassificationOutcome {
  VerdictPrediction prediction;
  int retries = 0;         // 0 or 1
  bool fell_back = false;  // no parseable label after the retry
};

// One completion, plus one clarifying retry when the output has no label.
// If that still fails the label falls back to NotEnoughEvidence. Provider
// errors propagate after transport retries.
ClassificationOutcome classify(const ClaimRecord& claim, const EvidenceSet& evidence,
                               LlmProvider& llm, const ClassifierSettings& settings = {});

}  // namespace veritas
