#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "veritas/verdict_label.hpp"

namespace veritas {

// All artifacts use insertion-ordered JSON so serialized key order is
// stable and matches the documented schemas.
using Json = nlohmann::ordered_json;

using ClaimId = std::int64_t;

struct GoldQA {
  std::string question;
  std::vector<std::string> answers;  // >= 1, each non-empty

  bool operator==(const GoldQA&) const = default;
};

struct ClaimRecord {
  ClaimId claim_id = 0;  // position in the claims array
  std::string text;
  std::optional<VerdictLabel> gold_label;
  std::vector<GoldQA> gold_evidence;
  std::optional<std::string> justification;

  bool operator==(const ClaimRecord&) const = default;
};

struct Document {
  std::string doc_id;  // "<claim_id>/<source line ordinal>"
  ClaimId claim_id = 0;
  std::string url;
  std::string text;

  bool operator==(const Document&) const = default;
};

std::string make_doc_id(ClaimId claim_id, std::size_t ordinal);

struct SourcedAnswer {
  std::string text;
  std::string doc_id;
  int retrieval_rank = 0;  // 1-based
  // Only set by externally produced predictions that pair each answer with
  // its own question; the pipeline always leaves it empty.
  std::optional<std::string> question;

  bool operator==(const SourcedAnswer&) const = default;
};

struct EvidenceSet {
  ClaimId claim_id = 0;
  std::string question;
  std::vector<SourcedAnswer> answers;  // ordered by retrieval rank

  bool operator==(const EvidenceSet&) const = default;
};

struct VerdictPrediction {
  ClaimId claim_id = 0;
  VerdictLabel label = VerdictLabel::NotEnoughEvidence;
  std::string raw_output;  // verbatim completion the label was parsed from
  EvidenceSet evidence;

  bool operator==(const VerdictPrediction&) const = default;
};

// One recorded per-claim stage failure (errors artifact).
struct StageFailure {
  ClaimId claim_id = 0;
  std::string stage;  // retrieve | question | answer | classify | index
  std::string message;
  bool fatal = false;  // true when the claim produced no prediction
  std::optional<std::string> doc_id;

  bool operator==(const StageFailure&) const = default;
};

void to_json(Json& j, const GoldQA& qa);
void from_json(const Json& j, GoldQA& qa);
void to_json(Json& j, const ClaimRecord& claim);
void from_json(const Json& j, ClaimRecord& claim);
void to_json(Json& j, const Document& doc);
void from_json(const Json& j, Document& doc);
void to_json(Json& j, const SourcedAnswer& answer);
void from_json(const Json& j, SourcedAnswer& answer);
void to_json(Json& j, const EvidenceSet& evidence);
void from_json(const Json& j, EvidenceSet& evidence);
void to_json(Json& j, const VerdictPrediction& prediction);
void from_json(const Json& j, VerdictPrediction& prediction);
void to_json(Json& j, const StageFailure& failure);
void from_json(const Json& j, StageFailure& failure);

}  // namespace veritas
