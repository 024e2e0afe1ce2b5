#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veritas/eval/meteor.hpp"
#include "veritas/records.hpp"
#include "veritas/verdict_label.hpp"

namespace veritas::eval {

struct EvalConfig {
  double qa_threshold = 0.25;  // Q+A score needed for a verdict to count (inclusive)
  // Caps the generated QA pairs scored per claim; 0 scores all of them.
  std::size_t top_k = 3;
  // Q-only scoring collapses repeated questions to one string.
  bool dedupe_questions = true;
  MeteorParams meteor;

  void validate() const;
};

// Pairwise METEOR (generated x references), optimal maximizing assignment,
// assigned sum divided by |references|. Empty generated scores 0; empty
// references throw ValidationError.
double hungarian_meteor(std::span<const std::string> generated,
                        std::span<const std::string> references, const MeteorParams& params = {});

struct ScoringStrings {
  std::vector<std::string> questions;
  std::vector<std::string> qa;  // "question answer"
};

// Strings the evidence of a prediction contributes. Each answer is paired
// with its own question override when present, else with the evidence
// question.
ScoringStrings generated_strings(const EvidenceSet& evidence, const EvalConfig& config);

// One string per gold question, and one "question answer" string per
// (question, answer) pair.
ScoringStrings reference_strings(const ClaimRecord& gold);

struct ClaimScore {
  ClaimId claim_id = 0;
  VerdictLabel gold = VerdictLabel::Supported;
  VerdictLabel predicted = VerdictLabel::Supported;
  double q_only = 0.0;
  double q_plus_a = 0.0;
  bool label_correct = false;
  bool counted = false;  // q_plus_a >= threshold

  bool operator==(const ClaimScore&) const = default;
};

// nullopt when the gold claim has no label or no evidence; such claims
// cannot be scored. Throws ValidationError when claim ids differ.
std::optional<ClaimScore> score_claim(const VerdictPrediction& prediction, const ClaimRecord& gold,
                                      const EvalConfig& config);

// Fraction of claims with a correct label and q_plus_a >= threshold.
double averitec_score(std::span<const ClaimScore> scores, const EvalConfig& config);

struct ClassStats {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count

  bool operator==(const ClassStats&) const = default;
};

using ConfusionMatrix = std::array<std::array<std::size_t, kLabelCount>, kLabelCount>;

struct ClassificationReport {
  double accuracy = 0.0;
  std::array<ClassStats, kLabelCount> per_class{};  // indexed by label_index
  double macro_f1 = 0.0;
  ConfusionMatrix confusion{};  // rows = gold, columns = predicted

  bool operator==(const ClassificationReport&) const = default;
};

// Standard multiclass metrics. A class with no true positives has F1 0.
ClassificationReport classification_report(std::span<const VerdictLabel> predicted,
                                           std::span<const VerdictLabel> gold);

struct ExcludedClaim {
  ClaimId claim_id = 0;
  std::string reason;

  bool operator==(const ExcludedClaim&) const = default;
};

struct RunReport {
  double q_only = 0.0;  // means over scored claims
  double q_plus_a = 0.0;
  double averitec = 0.0;
  ClassificationReport classification;
  std::vector<ClaimScore> per_claim;  // in prediction order
  std::vector<ExcludedClaim> excluded;
  std::size_t missing_predictions = 0;  // gold claims with no prediction
  double qa_threshold = 0.25;
  std::size_t top_k = 3;
  bool dedupe_questions = true;

  bool operator==(const RunReport&) const = default;
};

// Scores every prediction against its gold claim. Throws ValidationError
// listing offending ids when a prediction references an unknown claim or
// repeats one, and when no prediction could be scored.
RunReport evaluate_run(std::span<const VerdictPrediction> predictions,
                       std::span<const ClaimRecord> gold, const EvalConfig& config);

}  // namespace veritas::eval
