#include "veritas/verdict_classifier.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas {
namespace {

struct Alias {
  std::string_view text;
  VerdictLabel label;
};

// Longest first so that at a given position the most specific alias wins.
constexpr std::array<Alias, 12> kAliases = {{
    {"conflicting evidence/cherry-picking", VerdictLabel::ConflictingEvidence},
    {"conflicting evidence/cherrypicking", VerdictLabel::ConflictingEvidence},
    {"not enough information", VerdictLabel::NotEnoughEvidence},
    {"not enough evidence", VerdictLabel::NotEnoughEvidence},
    {"not enough info", VerdictLabel::NotEnoughEvidence},
    {"cherry-picking", VerdictLabel::ConflictingEvidence},
    {"cherrypicking", VerdictLabel::ConflictingEvidence},
    {"conflicting", VerdictLabel::ConflictingEvidence},
    {"supported", VerdictLabel::Supported},
    {"support", VerdictLabel::Supported},
    {"refuted", VerdictLabel::Refuted},
    {"refute", VerdictLabel::Refuted},
}};

bool is_word_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string render_exemplars(std::span<const FewShotExemplar> exemplars) {
  std::string out;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    if (i > 0) out += '\n';
    out += "Claim: " + exemplars[i].claim + "\n";
    out += "Statements: " + render_statements(exemplars[i].statements) + "\n";
    out += "Class: " + std::string(display_name(exemplars[i].label));
  }
  return out;
}

}  // namespace

std::string render_statements(std::span<const std::string> statements) {
  if (statements.empty()) return std::string(kNoEvidenceMarker);
  std::string out = "[";
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (i > 0) out += ", ";
    out += dump_line(Json(statements[i]));
  }
  out += "]";
  return out;
}

PromptRequest build_classification_prompt(std::string_view claim,
                                          std::span<const std::string> statements,
                                          std::span<const FewShotExemplar> exemplars,
                                          const ClassifierSettings& settings) {
  std::set<VerdictLabel> labels;
  for (const auto& ex : exemplars) labels.insert(ex.label);
  if (labels.size() < 2) {
    throw ValidationError("classification exemplars must cover at least two distinct labels");
  }

  PromptRequest request;
  request.user_text = render_template(settings.template_text,
                                      {{"claim", std::string(claim)},
                                       {"statements", render_statements(statements)},
                                       {"exemplars", render_exemplars(exemplars)}});
  request.model = settings.stage.model;
  request.decode = settings.stage.decode;
  return request;
}

std::optional<VerdictLabel> try_parse_label(std::string_view raw) noexcept {
  std::string lowered(raw.size(), '\0');
  std::transform(raw.begin(), raw.end(), lowered.begin(), ascii_lower);
  const std::string_view text = lowered;

  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    if (pos > 0 && is_word_char(static_cast<unsigned char>(text[pos - 1]))) continue;
    for (const auto& alias : kAliases) {
      if (text.compare(pos, alias.text.size(), alias.text) != 0) continue;
      const std::size_t end = pos + alias.text.size();
      if (end < text.size() && is_word_char(static_cast<unsigned char>(text[end]))) continue;
      return alias.label;
    }
  }
  return std::nullopt;
}

VerdictLabel parse_label(std::string_view raw) {
  if (auto label = try_parse_label(raw)) return *label;
  constexpr std::size_t kExcerpt = 120;
  throw UnparseableVerdictError("no verdict label found in: \"" +
                                std::string(raw.substr(0, kExcerpt)) + "\"");
}

ClassificationOutcome classify(const ClaimRecord& claim, const EvidenceSet& evidence,
                               LlmProvider& llm, const ClassifierSettings& settings) {
  if (evidence.claim_id != claim.claim_id) {
    throw ValidationError("evidence for claim " + std::to_string(evidence.claim_id) +
                          " passed for claim " + std::to_string(claim.claim_id));
  }
  std::vector<std::string> statements;
  statements.reserve(evidence.answers.size());
  for (const auto& answer : evidence.answers) statements.push_back(answer.text);

  auto request = build_classification_prompt(claim.text, statements, settings.exemplars, settings);

  ClassificationOutcome outcome;
  outcome.prediction.claim_id = claim.claim_id;
  outcome.prediction.evidence = evidence;

  // An empty completion counts as unparseable, not as a provider failure.
  auto attempt = [&](const PromptRequest& req) -> std::string {
    try {
      return complete(llm, req, settings.retry).text;
    } catch (const EmptyOutputError&) {
      return {};
    }
  };

  outcome.prediction.raw_output = attempt(request);
  auto label = try_parse_label(outcome.prediction.raw_output);
  if (!label) {
    outcome.retries = 1;
    request.user_text += "\n";
    request.user_text += kClarifyInstruction;
    outcome.prediction.raw_output = attempt(request);
    label = try_parse_label(outcome.prediction.raw_output);
  }
  if (!label) {
    outcome.fell_back = true;
    label = VerdictLabel::NotEnoughEvidence;
  }
  outcome.prediction.label = *label;
  return outcome;
}

}  // namespace veritas
