#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/records.hpp"

namespace veritas {

// Worked example for question generation: a claim with a question that
// misses the point and one that challenges the claim.
struct QuestionExemplar {
  std::string claim;
  std::string incorrect_question;
  std::string correct_question;

  bool operator==(const QuestionExemplar&) const = default;
};

// Annotated example for verdict classification.
struct FewShotExemplar {
  std::string claim;
  std::vector<std::string> statements;  // non-empty
  VerdictLabel label = VerdictLabel::NotEnoughEvidence;

  bool operator==(const FewShotExemplar&) const = default;
};

// Template text per stage. Placeholders: {{claim}}, {{exemplars}},
// {{question}}, {{document}}, {{statements}}.
struct PromptTemplates {
  std::string question;
  std::string answer;
  std::string classify;
};

// Assets compiled in from core/assets/prompts.
PromptTemplates default_prompt_templates();
std::vector<QuestionExemplar> default_question_exemplars();
std::vector<FewShotExemplar> default_classify_exemplars();

// Reads question.txt, answer.txt and classify.txt from `dir`.
PromptTemplates load_prompt_templates(const std::filesystem::path& dir);
std::vector<QuestionExemplar> load_question_exemplars(const std::filesystem::path& path);
std::vector<FewShotExemplar> load_classify_exemplars(const std::filesystem::path& path);
std::vector<QuestionExemplar> parse_question_exemplars(std::string_view json_text);
std::vector<FewShotExemplar> parse_classify_exemplars(std::string_view json_text);

// Single-pass substitution of {{name}} placeholders; substituted text is
// not rescanned. An unknown or unterminated placeholder throws
// ValidationError.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string, std::less<>>& values);

}  // namespace veritas
