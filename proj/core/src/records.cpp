#include "veritas/records.hpp"

#include "veritas/error.hpp"

namespace veritas {

std::string make_doc_id(ClaimId claim_id, std::size_t ordinal) {
  return std::to_string(claim_id) + "/" + std::to_string(ordinal);
}

namespace {

VerdictLabel label_field(const Json& j, const char* key) {
  const auto text = j.at(key).get<std::string>();
  auto label = label_from_string(text);
  if (!label) throw ValidationError("unknown verdict label \"" + text + "\"");
  return *label;
}

}  // namespace

void to_json(Json& j, const GoldQA& qa) {
  j = Json{{"question", qa.question}, {"answers", qa.answers}};
}

void from_json(const Json& j, GoldQA& qa) {
  j.at("question").get_to(qa.question);
  j.at("answers").get_to(qa.answers);
}

void to_json(Json& j, const ClaimRecord& claim) {
  j = Json::object();
  j["claim_id"] = claim.claim_id;
  j["claim"] = claim.text;
  j["label"] = claim.gold_label ? Json(std::string(display_name(*claim.gold_label)))
                                : Json(nullptr);
  j["questions"] = claim.gold_evidence;
  j["justification"] =
      claim.justification ? Json(*claim.justification) : Json(nullptr);
}

void from_json(const Json& j, ClaimRecord& claim) {
  j.at("claim_id").get_to(claim.claim_id);
  j.at("claim").get_to(claim.text);
  claim.gold_label.reset();
  if (j.contains("label") && !j.at("label").is_null()) {
    claim.gold_label = label_field(j, "label");
  }
  claim.gold_evidence.clear();
  if (j.contains("questions")) j.at("questions").get_to(claim.gold_evidence);
  claim.justification.reset();
  if (j.contains("justification") && !j.at("justification").is_null()) {
    claim.justification = j.at("justification").get<std::string>();
  }
}

void to_json(Json& j, const Document& doc) {
  j = Json{{"doc_id", doc.doc_id},
           {"claim_id", doc.claim_id},
           {"url", doc.url},
           {"text", doc.text}};
}

void from_json(const Json& j, Document& doc) {
  j.at("doc_id").get_to(doc.doc_id);
  j.at("claim_id").get_to(doc.claim_id);
  j.at("url").get_to(doc.url);
  j.at("text").get_to(doc.text);
}

void to_json(Json& j, const SourcedAnswer& answer) {
  j = Json{{"text", answer.text},
           {"doc_id", answer.doc_id},
           {"rank", answer.retrieval_rank}};
  if (answer.question) j["question"] = *answer.question;
}

void from_json(const Json& j, SourcedAnswer& answer) {
  j.at("text").get_to(answer.text);
  answer.doc_id = j.value("doc_id", std::string{});
  answer.retrieval_rank = j.value("rank", 0);
  answer.question.reset();
  if (j.contains("question") && !j.at("question").is_null()) {
    answer.question = j.at("question").get<std::string>();
  }
}

void to_json(Json& j, const EvidenceSet& evidence) {
  j = Json{{"claim_id", evidence.claim_id},
           {"question", evidence.question},
           {"answers", evidence.answers}};
}

void from_json(const Json& j, EvidenceSet& evidence) {
  j.at("claim_id").get_to(evidence.claim_id);
  j.at("question").get_to(evidence.question);
  j.at("answers").get_to(evidence.answers);
}

void to_json(Json& j, const VerdictPrediction& prediction) {
  j = Json{{"claim_id", prediction.claim_id},
           {"label", std::string(display_name(prediction.label))},
           {"raw_output", prediction.raw_output},
           {"question", prediction.evidence.question},
           {"answers", prediction.evidence.answers}};
}

void from_json(const Json& j, VerdictPrediction& prediction) {
  j.at("claim_id").get_to(prediction.claim_id);
  prediction.label = label_field(j, "label");
  prediction.raw_output = j.value("raw_output", std::string{});
  prediction.evidence.claim_id = prediction.claim_id;
  prediction.evidence.question = j.value("question", std::string{});
  prediction.evidence.answers.clear();
  if (j.contains("answers")) j.at("answers").get_to(prediction.evidence.answers);
}

void to_json(Json& j, const StageFailure& failure) {
  j = Json{{"claim_id", failure.claim_id},
           {"stage", failure.stage},
           {"message", failure.message},
           {"fatal", failure.fatal}};
  if (failure.doc_id) j["doc_id"] = *failure.doc_id;
}

void from_json(const Json& j, StageFailure& failure) {
  j.at("claim_id").get_to(failure.claim_id);
  j.at("stage").get_to(failure.stage);
  j.at("message").get_to(failure.message);
  failure.fatal = j.value("fatal", false);
  failure.doc_id.reset();
  if (j.contains("doc_id")) failure.doc_id = j.at("doc_id").get<std::string>();
}

}  // namespace veritas
