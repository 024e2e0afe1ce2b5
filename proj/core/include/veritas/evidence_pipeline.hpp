#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/embedding.hpp"
#include "veritas/llm_gateway.hpp"
#include "veritas/prompt_assets.hpp"
#include "veritas/records.hpp"
#include "veritas/vector_index.hpp"

namespace veritas {

// Model and decoding parameters for one LLM stage.
struct StageSettings {
  std::string model;
  DecodeConfig decode;
};

struct EvidenceSettings {
  PromptTemplates templates = default_prompt_templates();
  std::vector<QuestionExemplar> exemplars = default_question_exemplars();
  StageSettings question{"", DecodeConfig{0.0, 128, std::nullopt, {}}};
  StageSettings answer{"", DecodeConfig{0.0, 256, std::nullopt, {}}};
  std::size_t document_char_budget = 12000;  // code points of document text
  std::size_t top_k = 3;
  // Answer calls for one claim issued concurrently; 1 keeps them sequential.
  std::size_t answer_parallelism = 1;
  RetryPolicy retry;
  EmbedOptions embed;
};

// Trims whitespace and removes one matched pair of wrapping double quotes
// (straight or curly).
std::string strip_wrapping_quotes(std::string_view text);

// strip_wrapping_quotes, then appends '?' if missing. Empty stays empty.
std::string normalize_question(std::string_view text);

// Question prompt: instruction block, one Claim / Incorrect Question /
// Correct Question triple per exemplar, then "Given claim: <claim>".
// Throws ValidationError without exemplars.
PromptRequest build_question_prompt(std::string_view claim,
                                    std::span<const QuestionExemplar> exemplars,
                                    const EvidenceSettings& settings = {});

// Answer prompt with the question and the document text truncated to
// settings.document_char_budget. Throws ValidationError on empty inputs.
PromptRequest build_answer_prompt(std::string_view question, std::string_view document_text,
                                  const EvidenceSettings& settings = {});

// Throws StageError (stage "question") when the completion is empty after
// normalization or the provider fails.
std::string generate_question(const ClaimRecord& claim, LlmProvider& llm,
                              const EvidenceSettings& settings = {});

// Throws StageError (stage "answer") on an empty completion or provider
// failure.
SourcedAnswer generate_answer(std::string_view question, const Document& doc,
                              int retrieval_rank, LlmProvider& llm,
                              const EvidenceSettings& settings = {});

struct EvidenceOutcome {
  EvidenceSet evidence;
  std::vector<Document> retrieved;      // in retrieval rank order
  std::vector<StageFailure> failures;   // non-fatal, one per failed answer

  bool evidence_empty() const { return evidence.answers.empty(); }
};

// retrieve -> question -> one answer per retrieved document. Retrieval and
// question failures abort with StageError; a failed answer is recorded in
// `failures` and the remaining documents are still processed.
EvidenceOutcome extract_evidence(const ClaimRecord& claim, const VectorIndex& index,
                                 std::span<const Document> docs,
                                 EmbeddingProvider& embedder, LlmProvider& llm,
                                 const EvidenceSettings& settings = {});

}  // namespace veritas
