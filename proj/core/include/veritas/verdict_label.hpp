#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace veritas {

// Four-way veracity verdict. Enumerator order is the reporting order
// (S, R, N, C) used by confusion matrices and class-wise tables.
enum class VerdictLabel {
  Supported = 0,
  Refuted = 1,
  NotEnoughEvidence = 2,
  ConflictingEvidence = 3,
};

inline constexpr std::size_t kLabelCount = 4;

inline constexpr std::array<VerdictLabel, kLabelCount> kAllLabels = {
    VerdictLabel::Supported, VerdictLabel::Refuted,
    VerdictLabel::NotEnoughEvidence, VerdictLabel::ConflictingEvidence};

constexpr std::size_t label_index(VerdictLabel label) {
  return static_cast<std::size_t>(label);
}

// "Supported", "Refuted", "Not Enough Evidence",
// "Conflicting Evidence/Cherrypicking".
std::string_view display_name(VerdictLabel label);

// One-letter code: S, R, N, C.
char short_code(VerdictLabel label);

// Maps a dataset/artifact label string to a verdict. Case-insensitive,
// surrounding whitespace ignored; accepts both the "Cherrypicking" and
// "Cherry-picking" spellings. Returns nullopt for anything else.
std::optional<VerdictLabel> label_from_string(std::string_view text);

}  // namespace veritas
