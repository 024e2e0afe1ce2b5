#include "veritas/evidence_pipeline.hpp"

#include <future>
#include <optional>

#include "veritas/error.hpp"

namespace veritas {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string render_question_exemplars(std::span<const QuestionExemplar> exemplars) {
  std::string out;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    if (i > 0) out += '\n';
    out += "Claim: " + exemplars[i].claim + "\n";
    out += "Incorrect Question: \"" + exemplars[i].incorrect_question + "\"\n";
    out += "Correct Question: \"" + exemplars[i].correct_question + "\"";
  }
  return out;
}

PromptRequest make_request(std::string user_text, const StageSettings& stage) {
  PromptRequest request;
  request.user_text = std::move(user_text);
  request.model = stage.model;
  request.decode = stage.decode;
  return request;
}

}  // namespace

std::string strip_wrapping_quotes(std::string_view text) {
  text = trim(text);
  static constexpr std::string_view kCurlyOpen = "\xE2\x80\x9C";   // U+201C
  static constexpr std::string_view kCurlyClose = "\xE2\x80\x9D";  // U+201D
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  } else if (text.size() >= kCurlyOpen.size() + kCurlyClose.size() &&
             starts_with(text, kCurlyOpen) && ends_with(text, kCurlyClose)) {
    text = text.substr(kCurlyOpen.size(), text.size() - kCurlyOpen.size() - kCurlyClose.size());
  }
  return std::string(trim(text));
}

std::string normalize_question(std::string_view text) {
  auto question = strip_wrapping_quotes(text);
  if (!question.empty() && question.back() != '?') question += '?';
  return question;
}

PromptRequest build_question_prompt(std::string_view claim,
                                    std::span<const QuestionExemplar> exemplars,
                                    const EvidenceSettings& settings) {
  if (exemplars.empty()) {
    throw ValidationError("question prompt needs at least one exemplar");
  }
  if (trim(claim).empty()) throw ValidationError("question prompt needs a claim");
  auto text = render_template(settings.templates.question,
                              {{"claim", std::string(claim)},
                               {"exemplars", render_question_exemplars(exemplars)}});
  return make_request(std::move(text), settings.question);
}

PromptRequest build_answer_prompt(std::string_view question, std::string_view document_text,
                                  const EvidenceSettings& settings) {
  if (trim(question).empty()) throw ValidationError("answer prompt needs a question");
  if (trim(document_text).empty()) throw ValidationError("answer prompt needs document text");
  auto text = render_template(
      settings.templates.answer,
      {{"question", std::string(question)},
       {"document", truncate_utf8(document_text, settings.document_char_budget)}});
  return make_request(std::move(text), settings.answer);
}

std::string generate_question(const ClaimRecord& claim, LlmProvider& llm,
                              const EvidenceSettings& settings) {
  const auto request = build_question_prompt(claim.text, settings.exemplars, settings);
  std::string question;
  try {
    question = normalize_question(complete(llm, request, settings.retry).text);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(claim.claim_id, "question", e.what());
  }
  if (question.empty() || question == "?") {
    throw StageError(claim.claim_id, "question", "question generation produced no text");
  }
  return question;
}

SourcedAnswer generate_answer(std::string_view question, const Document& doc,
                              int retrieval_rank, LlmProvider& llm,
                              const EvidenceSettings& settings) {
  SourcedAnswer answer;
  answer.doc_id = doc.doc_id;
  answer.retrieval_rank = retrieval_rank;
  try {
    const auto request = build_answer_prompt(question, doc.text, settings);
    answer.text = strip_wrapping_quotes(complete(llm, request, settings.retry).text);
  } catch (const Error& e) {
    throw StageError(doc.claim_id, "answer", doc.doc_id + ": " + e.what());
  }
  if (answer.text.empty()) {
    throw StageError(doc.claim_id, "answer", doc.doc_id + ": answer was empty after normalization");
  }
  return answer;
}

EvidenceOutcome extract_evidence(const ClaimRecord& claim, const VectorIndex& index,
                                 std::span<const Document> docs,
                                 EmbeddingProvider& embedder, LlmProvider& llm,
                                 const EvidenceSettings& settings) {
  EvidenceOutcome outcome;
  outcome.evidence.claim_id = claim.claim_id;

  try {
    outcome.retrieved =
        retrieve_for_claim(claim, index, docs, embedder, settings.top_k, settings.embed);
  } catch (const Error& e) {
    throw StageError(claim.claim_id, "retrieve", e.what());
  }

  outcome.evidence.question = generate_question(claim, llm, settings);
  const auto& question = outcome.evidence.question;
  const auto& retrieved = outcome.retrieved;

  std::vector<std::optional<SourcedAnswer>> answers(retrieved.size());
  std::vector<std::optional<std::string>> errors(retrieved.size());
  auto run_one = [&](std::size_t i) {
    try {
      answers[i] = generate_answer(question, retrieved[i], static_cast<int>(i + 1), llm, settings);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  };

  const std::size_t parallelism = std::max<std::size_t>(1, settings.answer_parallelism);
  if (parallelism == 1) {
    for (std::size_t i = 0; i < retrieved.size(); ++i) run_one(i);
  } else {
    for (std::size_t begin = 0; begin < retrieved.size(); begin += parallelism) {
      std::vector<std::future<void>> batch;
      for (std::size_t i = begin; i < std::min(retrieved.size(), begin + parallelism); ++i) {
        batch.push_back(std::async(std::launch::async, run_one, i));
      }
      for (auto& f : batch) f.get();
    }
  }

  for (std::size_t i = 0; i < retrieved.size(); ++i) {
    if (answers[i]) {
      outcome.evidence.answers.push_back(std::move(*answers[i]));
    } else {
      outcome.failures.push_back(
          StageFailure{claim.claim_id, "answer", *errors[i], false, retrieved[i].doc_id});
    }
  }
  return outcome;
}

}  // namespace veritas
