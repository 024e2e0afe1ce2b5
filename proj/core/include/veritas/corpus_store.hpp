#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "veritas/records.hpp"

namespace veritas {

// Placeholder the dataset itself uses for questions that could not be
// answered; substituted when a gold question arrives with no usable answer.
inline constexpr std::string_view kUnansweredText = "No answer could be found.";

// Reads a claims file in the dataset's published schema: a JSON array of
// objects with "claim", "label", "questions" (each with "question" and
// "answers") and "justification". claim_id is the array position.
//
// Throws ParseError (byte offset) on malformed JSON and ValidationError
// naming the claim_id on an unknown label or empty claim text.
std::vector<ClaimRecord> load_claims(const std::filesystem::path& path);
std::vector<ClaimRecord> parse_claims(std::string_view json_text,
                                      std::string_view source_name = "<memory>");

// Path of the knowledge-store file for one claim: <dir>/<claim_id>.json
std::filesystem::path knowledge_store_file(const std::filesystem::path& dir,
                                           ClaimId claim_id);

// One Document per JSON line ({"url": ..., "url2text": [...]}), text being
// the segments joined by '\n'. Lines with empty text are dropped but keep
// their ordinal, so doc ids always reflect the source line.
std::vector<Document> load_knowledge_store(const std::filesystem::path& dir,
                                           ClaimId claim_id);

struct DatasetStats {
  std::array<std::size_t, kLabelCount> counts_per_label{};  // S, R, N, C
  std::size_t total = 0;      // sum of counts_per_label
  std::size_t unlabeled = 0;  // records without a gold label
  bool missing_label = false; // some label has a zero count

  std::size_t count(VerdictLabel label) const {
    return counts_per_label[label_index(label)];
  }
};

DatasetStats validate_dataset(std::span<const ClaimRecord> claims);

}  // namespace veritas
