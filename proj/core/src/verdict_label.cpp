#include "veritas/verdict_label.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace veritas {

std::string_view display_name(VerdictLabel label) {
  switch (label) {
    case VerdictLabel::Supported:
      return "Supported";
    case VerdictLabel::Refuted:
      return "Refuted";
    case VerdictLabel::NotEnoughEvidence:
      return "Not Enough Evidence";
    case VerdictLabel::ConflictingEvidence:
      return "Conflicting Evidence/Cherrypicking";
  }
  return "Unknown";
}

char short_code(VerdictLabel label) {
  switch (label) {
    case VerdictLabel::Supported:
      return 'S';
    case VerdictLabel::Refuted:
      return 'R';
    case VerdictLabel::NotEnoughEvidence:
      return 'N';
    case VerdictLabel::ConflictingEvidence:
      return 'C';
  }
  return '?';
}

std::optional<VerdictLabel> label_from_string(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);

  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  if (lowered == "supported") return VerdictLabel::Supported;
  if (lowered == "refuted") return VerdictLabel::Refuted;
  if (lowered == "not enough evidence") return VerdictLabel::NotEnoughEvidence;
  if (lowered == "conflicting evidence/cherrypicking" ||
      lowered == "conflicting evidence/cherry-picking") {
    return VerdictLabel::ConflictingEvidence;
  }
  return std::nullopt;
}

}  // namespace veritas
