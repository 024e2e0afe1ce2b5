#include "veritas/corpus_store.hpp"

#include <algorithm>
#include <string>

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string claim_context(ClaimId id) { return "claim " + std::to_string(id); }

// Gold answers come either as plain strings or as objects. Boolean answers
// carry their explanation, appended the way the dataset's scorer does.
std::string answer_text(const nlohmann::json& answer) {
  if (answer.is_string()) return answer.get<std::string>();
  if (!answer.is_object()) return {};
  std::string text = answer.value("answer", std::string{});
  if (answer.value("answer_type", std::string{}) == "Boolean") {
    const auto explanation = answer.value("boolean_explanation", std::string{});
    if (!trim(explanation).empty()) text += ". " + explanation;
  }
  return text;
}

std::vector<GoldQA> parse_questions(const nlohmann::json& questions, ClaimId id) {
  std::vector<GoldQA> gold;
  if (!questions.is_array()) {
    throw ValidationError(claim_context(id) + ": \"questions\" is not an array");
  }
  for (const auto& q : questions) {
    GoldQA qa;
    qa.question = std::string(trim(q.value("question", std::string{})));
    if (qa.question.empty()) continue;
    if (q.contains("answers") && q.at("answers").is_array()) {
      for (const auto& a : q.at("answers")) {
        auto text = std::string(trim(answer_text(a)));
        if (!text.empty()) qa.answers.push_back(std::move(text));
      }
    }
    if (qa.answers.empty()) qa.answers.emplace_back(kUnansweredText);
    gold.push_back(std::move(qa));
  }
  return gold;
}

}  // namespace

std::vector<ClaimRecord> parse_claims(std::string_view json_text,
                                      std::string_view source_name) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(source_name) + ": malformed JSON at byte " +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
  if (!root.is_array()) {
    throw ValidationError(std::string(source_name) + ": expected a JSON array of claims");
  }

  std::vector<ClaimRecord> claims;
  claims.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const auto& obj = root[i];
    ClaimRecord record;
    record.claim_id = static_cast<ClaimId>(i);
    if (!obj.is_object()) {
      throw ValidationError(claim_context(record.claim_id) + ": not a JSON object");
    }
    try {
      record.text = std::string(trim(obj.value("claim", std::string{})));
      if (record.text.empty()) {
        throw ValidationError(claim_context(record.claim_id) + ": empty claim text");
      }
      if (obj.contains("label") && !obj.at("label").is_null()) {
        const auto raw = obj.at("label").get<std::string>();
        record.gold_label = label_from_string(raw);
        if (!record.gold_label) {
          throw ValidationError(claim_context(record.claim_id) +
                                ": unknown label \"" + raw + "\"");
        }
      }
      if (obj.contains("questions") && !obj.at("questions").is_null()) {
        record.gold_evidence = parse_questions(obj.at("questions"), record.claim_id);
      }
      if (obj.contains("justification") && obj.at("justification").is_string()) {
        record.justification = obj.at("justification").get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(claim_context(record.claim_id) + ": " + e.what());
    }
    claims.push_back(std::move(record));
  }
  return claims;
}

std::vector<ClaimRecord> load_claims(const std::filesystem::path& path) {
  return parse_claims(read_text_file(path), path.string());
}

std::filesystem::path knowledge_store_file(const std::filesystem::path& dir,
                                           ClaimId claim_id) {
  return dir / (std::to_string(claim_id) + ".json");
}

std::vector<Document> load_knowledge_store(const std::filesystem::path& dir,
                                           ClaimId claim_id) {
  const auto path = knowledge_store_file(dir, claim_id);
  if (!std::filesystem::exists(path)) {
    throw NotFoundError("knowledge store for claim " + std::to_string(claim_id) +
                        " not found: " + path.string());
  }
  const std::string content = read_text_file(path);

  std::vector<Document> docs;
  std::size_t ordinal = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    const std::string_view line = trim(std::string_view(content).substr(start, end - start));
    start = end + 1;
    const std::size_t line_ordinal = ordinal++;
    if (line.empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_ordinal + 1) +
                           ": malformed line: " + e.what(),
                       line_ordinal + 1);
    }
    if (!obj.is_object()) {
      throw ParseError(path.string() + ":" + std::to_string(line_ordinal + 1) +
                           ": expected a JSON object",
                       line_ordinal + 1);
    }

    Document doc;
    doc.claim_id = claim_id;
    doc.doc_id = make_doc_id(claim_id, line_ordinal);
    try {
      doc.url = obj.value("url", std::string{});
      if (obj.contains("url2text") && obj.at("url2text").is_array()) {
        bool first = true;
        for (const auto& segment : obj.at("url2text")) {
          if (!first) doc.text += '\n';
          doc.text += segment.get<std::string>();
          first = false;
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_ordinal + 1) + ": " +
                           e.what(),
                       line_ordinal + 1);
    }
    if (trim(doc.text).empty()) continue;
    docs.push_back(std::move(doc));
  }
  return docs;
}

DatasetStats validate_dataset(std::span<const ClaimRecord> claims) {
  DatasetStats stats;
  for (const auto& claim : claims) {
    if (claim.gold_label) {
      ++stats.counts_per_label[label_index(*claim.gold_label)];
      ++stats.total;
    } else {
      ++stats.unlabeled;
    }
  }
  stats.missing_label = std::any_of(stats.counts_per_label.begin(),
                                    stats.counts_per_label.end(),
                                    [](std::size_t c) { return c == 0; });
  return stats;
}

}  // namespace veritas
