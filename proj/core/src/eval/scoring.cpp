#include "veritas/eval/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "veritas/error.hpp"
#include "veritas/eval/hungarian.hpp"
#include "veritas/eval/text.hpp"

namespace veritas::eval {
namespace {

std::string join_ids(const std::vector<ClaimId>& ids) {
  std::string out;
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > kShown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

void EvalConfig::validate() const {
  if (!(qa_threshold >= 0.0 && qa_threshold <= 1.0)) {
    throw ValidationError("qa_threshold must be within [0, 1]");
  }
  meteor.validate();
}

double hungarian_meteor(std::span<const std::string> generated,
                        std::span<const std::string> references, const MeteorParams& params) {
  if (references.empty()) throw ValidationError("hungarian_meteor needs at least one reference");
  if (generated.empty()) return 0.0;

  std::vector<std::vector<std::string>> ref_tokens;
  ref_tokens.reserve(references.size());
  for (const auto& r : references) ref_tokens.push_back(tokenize(r));

  Matrix scores(generated.size(), references.size());
  for (std::size_t i = 0; i < generated.size(); ++i) {
    const auto hyp = tokenize(generated[i]);
    for (std::size_t j = 0; j < references.size(); ++j) {
      scores(i, j) = meteor_tokens(hyp, ref_tokens[j], params).score;
    }
  }
  const auto assignment = hungarian(scores, /*maximize=*/true);
  return assignment.total / static_cast<double>(references.size());
}

ScoringStrings generated_strings(const EvidenceSet& evidence, const EvalConfig& config) {
  ScoringStrings out;
  std::size_t used = evidence.answers.size();
  if (config.top_k > 0) used = std::min(used, config.top_k);

  std::set<std::string> seen;
  auto add_question = [&](const std::string& q) {
    if (q.empty()) return;
    if (config.dedupe_questions && !seen.insert(q).second) return;
    out.questions.push_back(q);
  };

  for (std::size_t i = 0; i < used; ++i) {
    const auto& answer = evidence.answers[i];
    const std::string& q = answer.question ? *answer.question : evidence.question;
    add_question(q);
    out.qa.push_back(q + " " + answer.text);
  }
  if (used == 0) add_question(evidence.question);
  return out;
}

ScoringStrings reference_strings(const ClaimRecord& gold) {
  ScoringStrings out;
  for (const auto& qa : gold.gold_evidence) {
    out.questions.push_back(qa.question);
    for (const auto& a : qa.answers) out.qa.push_back(qa.question + " " + a);
  }
  return out;
}

std::optional<ClaimScore> score_claim(const VerdictPrediction& prediction, const ClaimRecord& gold,
                                      const EvalConfig& config) {
  if (prediction.claim_id != gold.claim_id) {
    throw ValidationError("prediction for claim " + std::to_string(prediction.claim_id) +
                          " scored against gold claim " + std::to_string(gold.claim_id));
  }
  if (!gold.gold_label) return std::nullopt;
  const auto refs = reference_strings(gold);
  if (refs.questions.empty() || refs.qa.empty()) return std::nullopt;

  const auto gen = generated_strings(prediction.evidence, config);
  ClaimScore score;
  score.claim_id = gold.claim_id;
  score.gold = *gold.gold_label;
  score.predicted = prediction.label;
  score.q_only = hungarian_meteor(gen.questions, refs.questions, config.meteor);
  score.q_plus_a = hungarian_meteor(gen.qa, refs.qa, config.meteor);
  score.label_correct = prediction.label == *gold.gold_label;
  score.counted = score.q_plus_a >= config.qa_threshold;
  return score;
}

double averitec_score(std::span<const ClaimScore> scores, const EvalConfig& config) {
  if (scores.empty()) throw ValidationError("averitec score needs at least one scored claim");
  std::size_t hits = 0;
  for (const auto& s : scores) {
    if (s.label_correct && s.q_plus_a >= config.qa_threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.size());
}

ClassificationReport classification_report(std::span<const VerdictLabel> predicted,
                                           std::span<const VerdictLabel> gold) {
  if (predicted.size() != gold.size()) {
    throw ValidationError("classification report: " + std::to_string(predicted.size()) +
                          " predictions vs " + std::to_string(gold.size()) + " gold labels");
  }
  if (gold.empty()) throw ValidationError("classification report needs at least one item");

  ClassificationReport report;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++report.confusion[label_index(gold[i])][label_index(predicted[i])];
    if (gold[i] == predicted[i]) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(gold.size());

  double f1_sum = 0.0;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    std::size_t row = 0, col = 0;
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      row += report.confusion[c][k];
      col += report.confusion[k][c];
    }
    const auto tp = static_cast<double>(report.confusion[c][c]);
    auto& stats = report.per_class[c];
    stats.support = row;
    stats.precision = safe_ratio(tp, static_cast<double>(col));
    stats.recall = safe_ratio(tp, static_cast<double>(row));
    // 2tp / (2tp + fp + fn), which is 0 whenever tp is 0.
    stats.f1 = safe_ratio(2.0 * tp, static_cast<double>(row + col));
    f1_sum += stats.f1;
  }
  report.macro_f1 = f1_sum / static_cast<double>(kLabelCount);
  return report;
}

RunReport evaluate_run(std::span<const VerdictPrediction> predictions,
                       std::span<const ClaimRecord> gold, const EvalConfig& config) {
  config.validate();
  std::map<ClaimId, const ClaimRecord*> by_id;
  for (const auto& g : gold) by_id.emplace(g.claim_id, &g);

  std::vector<ClaimId> unknown, repeated;
  std::set<ClaimId> seen;
  for (const auto& p : predictions) {
    if (!by_id.count(p.claim_id)) {
      unknown.push_back(p.claim_id);
    } else if (!seen.insert(p.claim_id).second) {
      repeated.push_back(p.claim_id);
    }
  }
  if (!unknown.empty()) {
    throw ValidationError("predictions reference claim ids not in gold: " + join_ids(unknown));
  }
  if (!repeated.empty()) {
    throw ValidationError("claim ids predicted more than once: " + join_ids(repeated));
  }

  RunReport report;
  report.qa_threshold = config.qa_threshold;
  report.top_k = config.top_k;
  report.dedupe_questions = config.dedupe_questions;
  report.missing_predictions = by_id.size() - seen.size();

  std::vector<VerdictLabel> predicted_labels, gold_labels;
  double q_sum = 0.0, qa_sum = 0.0;
  for (const auto& p : predictions) {
    const ClaimRecord& g = *by_id.at(p.claim_id);
    auto score = score_claim(p, g, config);
    if (!score) {
      report.excluded.push_back(
          {p.claim_id, g.gold_label ? "gold claim has no evidence" : "gold claim has no label"});
      continue;
    }
    q_sum += score->q_only;
    qa_sum += score->q_plus_a;
    predicted_labels.push_back(score->predicted);
    gold_labels.push_back(score->gold);
    report.per_claim.push_back(*score);
  }
  if (report.per_claim.empty()) throw ValidationError("no prediction could be scored");

  const auto n = static_cast<double>(report.per_claim.size());
  report.q_only = q_sum / n;
  report.q_plus_a = qa_sum / n;
  report.averitec = averitec_score(report.per_claim, config);
  report.classification = classification_report(predicted_labels, gold_labels);
  return report;
}

}  // namespace veritas::eval
