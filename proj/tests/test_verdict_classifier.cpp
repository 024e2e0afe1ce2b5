#include <doctest.h>

#include "veritas/error.hpp"
#include "veritas/verdict_classifier.hpp"

using namespace veritas;

namespace {

ClaimRecord claim() { return {7, "Water boils at 50 C at sea level.", VerdictLabel::Refuted, {}, {}}; }

EvidenceSet evidence(std::vector<std::string> answers) {
  EvidenceSet e{7, "Does water boil at 50 C at sea level?", {}};
  int rank = 1;
  for (auto& a : answers) e.answers.push_back({a, "7/" + std::to_string(rank), rank, std::nullopt}), ++rank;
  return e;
}

ClassifierSettings settings() {
  ClassifierSettings s;
  s.retry = RetryPolicy{1, std::chrono::milliseconds(0), 1.0};
  return s;
}

}  // namespace

TEST_CASE("label parsing") {
  CHECK(parse_label("Supported") == VerdictLabel::Supported);
  CHECK(parse_label("  refuted.\n") == VerdictLabel::Refuted);
  CHECK(parse_label("Class: Not Enough Evidence") == VerdictLabel::NotEnoughEvidence);
  CHECK(parse_label("not enough info") == VerdictLabel::NotEnoughEvidence);
  CHECK(parse_label("Not enough information to decide") == VerdictLabel::NotEnoughEvidence);
  CHECK(parse_label("'Conflicting Evidence/Cherrypicking'") == VerdictLabel::ConflictingEvidence);
  CHECK(parse_label("conflicting evidence/cherry-picking") == VerdictLabel::ConflictingEvidence);
  CHECK(parse_label("cherry-picking") == VerdictLabel::ConflictingEvidence);
  CHECK(parse_label("The answer is Refuted, not Supported") == VerdictLabel::Refuted);
  // Word boundaries: "supporting" is not "support".
  CHECK(parse_label("supporting facts show it is refuted") == VerdictLabel::Refuted);
  CHECK_FALSE(try_parse_label("I cannot decide.").has_value());
  CHECK_FALSE(try_parse_label("").has_value());
  CHECK_THROWS_AS(parse_label("unsure"), UnparseableVerdictError);
}

TEST_CASE("statement rendering") {
  CHECK(render_statements({}) == kNoEvidenceMarker);
  const std::vector<std::string> s = {"one", "say \"two\""};
  CHECK(render_statements(s) == R"(["one", "say \"two\""])");
}

TEST_CASE("classification prompt") {
  auto s = settings();
  s.stage.model = "clf";
  const std::vector<std::string> statements = {"No, it boils at 100 C."};
  const auto r = build_classification_prompt("Claim X", statements, s.exemplars, s);
  CHECK(r.model == "clf");
  CHECK(r.decode.max_output_tokens == 16);
  CHECK(r.user_text.find("Given Claim: Claim X\nGiven Statements: [\"No, it boils at 100 C.\"]") !=
        std::string::npos);
  CHECK(r.user_text.find("\nClass: Supported\n") != std::string::npos);

  const std::vector<FewShotExemplar> one_label = {{"c", {"s"}, VerdictLabel::Refuted},
                                                  {"d", {"t"}, VerdictLabel::Refuted}};
  CHECK_THROWS_AS(build_classification_prompt("x", statements, one_label, s), ValidationError);
}

TEST_CASE("classify parses the first completion") {
  ScriptedProvider llm({{{1, "Refuted"}}, {}});
  const auto out = classify(claim(), evidence({"It boils at 100 C."}), llm, settings());
  CHECK(out.prediction.label == VerdictLabel::Refuted);
  CHECK(out.prediction.raw_output == "Refuted");
  CHECK(out.prediction.claim_id == 7);
  CHECK(out.prediction.evidence.answers.size() == 1);
  CHECK(out.retries == 0);
  CHECK_FALSE(out.fell_back);
  CHECK(llm.call_count() == 1);
}

TEST_CASE("one clarifying retry, then fallback") {
  ScriptedProvider recovers({{{1, "Hmm."}, {2, "Supported"}}, {}});
  auto out = classify(claim(), evidence({}), recovers, settings());
  CHECK(out.prediction.label == VerdictLabel::Supported);
  CHECK(out.retries == 1);
  const auto log = recovers.call_log();
  CHECK(log[0].request.user_text.find(std::string(kNoEvidenceMarker)) != std::string::npos);
  CHECK(log[1].request.user_text == log[0].request.user_text + "\n" + std::string(kClarifyInstruction));

  ScriptedProvider never({{{1, "   "}, {2, "no idea"}}, {}});
  out = classify(claim(), evidence({"x"}), never, settings());
  CHECK(out.fell_back);
  CHECK(out.prediction.label == VerdictLabel::NotEnoughEvidence);
  CHECK(out.prediction.raw_output == "no idea");
  CHECK(never.call_count() == 2);
}

TEST_CASE("classify errors") {
  ScriptedProvider llm({});
  auto e = evidence({"x"});
  e.claim_id = 8;
  CHECK_THROWS_AS(classify(claim(), e, llm, settings()), ValidationError);
  CHECK_THROWS_AS(classify(claim(), evidence({"x"}), llm, settings()), UnknownPromptError);
}
