#include "veritas/prompt_assets.hpp"

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas {

namespace assets {
extern const std::string_view question_txt;
extern const std::string_view answer_txt;
extern const std::string_view classify_txt;
extern const std::string_view question_exemplars_json;
extern const std::string_view classify_exemplars_json;
}  // namespace assets

namespace {

std::string strip_final_newline(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  return std::string(text);
}

nlohmann::json parse_asset(std::string_view json_text, std::string_view what) {
  try {
    return nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), e.byte);
  }
}

}  // namespace

PromptTemplates default_prompt_templates() {
  return PromptTemplates{strip_final_newline(assets::question_txt),
                         strip_final_newline(assets::answer_txt),
                         strip_final_newline(assets::classify_txt)};
}

std::vector<QuestionExemplar> default_question_exemplars() {
  return parse_question_exemplars(assets::question_exemplars_json);
}

std::vector<FewShotExemplar> default_classify_exemplars() {
  return parse_classify_exemplars(assets::classify_exemplars_json);
}

PromptTemplates load_prompt_templates(const std::filesystem::path& dir) {
  return PromptTemplates{strip_final_newline(read_text_file(dir / "question.txt")),
                         strip_final_newline(read_text_file(dir / "answer.txt")),
                         strip_final_newline(read_text_file(dir / "classify.txt"))};
}

std::vector<QuestionExemplar> parse_question_exemplars(std::string_view json_text) {
  const auto json = parse_asset(json_text, "question exemplars");
  std::vector<QuestionExemplar> out;
  try {
    for (const auto& item : json) {
      out.push_back(QuestionExemplar{item.at("claim").get<std::string>(),
                                     item.at("incorrect_question").get<std::string>(),
                                     item.at("correct_question").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed question exemplar: ") + e.what());
  }
  return out;
}

std::vector<FewShotExemplar> parse_classify_exemplars(std::string_view json_text) {
  const auto json = parse_asset(json_text, "classification exemplars");
  std::vector<FewShotExemplar> out;
  try {
    for (const auto& item : json) {
      FewShotExemplar ex;
      ex.claim = item.at("claim").get<std::string>();
      ex.statements = item.at("statements").get<std::vector<std::string>>();
      const auto label_text = item.at("label").get<std::string>();
      const auto label = label_from_string(label_text);
      if (!label) throw ValidationError("unknown exemplar label \"" + label_text + "\"");
      if (ex.statements.empty()) throw ValidationError("exemplar has no statements");
      ex.label = *label;
      out.push_back(std::move(ex));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed classification exemplar: ") + e.what());
  }
  return out;
}

std::vector<QuestionExemplar> load_question_exemplars(const std::filesystem::path& path) {
  return parse_question_exemplars(read_text_file(path));
}

std::vector<FewShotExemplar> load_classify_exemplars(const std::filesystem::path& path) {
  return parse_classify_exemplars(read_text_file(path));
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw ValidationError("unterminated placeholder in prompt template");
    }
    const auto name = tmpl.substr(open + 2, close - open - 2);
    const auto it = values.find(name);
    if (it == values.end()) {
      throw ValidationError("unknown placeholder {{" + std::string(name) + "}} in prompt template");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace veritas
