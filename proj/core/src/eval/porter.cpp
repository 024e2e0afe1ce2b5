// Porter stemmer over code points. Rule tables are applied in order; the
// first rule whose suffix matches decides the step, even when its measure
// condition then fails.
#include <array>
#include <cstdint>
#include <string>

#include <unicode/utf8.h>

#include "veritas/eval/text.hpp"

namespace veritas::eval {
namespace {

using Word = std::u32string;

bool is_consonant(const Word& w, std::size_t i) {
  switch (w[i]) {
    case U'a':
    case U'e':
    case U'i':
    case U'o':
    case U'u':
      return false;
    case U'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in [C](VC){m}[V]
int measure(const Word& stem) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    const bool vowel = !is_consonant(stem, i);
    if (prev_vowel && !vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

bool contains_vowel(const Word& stem) {
  for (std::size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const Word& w) {
  const auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: consonant-vowel-consonant ending, final consonant not w, x or y.
bool ends_cvc(const Word& w) {
  const auto n = w.size();
  if (n < 3) return false;
  if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1)) return false;
  return w[n - 1] != U'w' && w[n - 1] != U'x' && w[n - 1] != U'y';
}

bool ends_with(const Word& w, std::u32string_view suffix) {
  return w.size() >= suffix.size() &&
         std::u32string_view(w).substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
  std::u32string_view suffix;
  std::u32string_view replacement;
  bool (*condition)(const Word& stem);
};

bool m_positive(const Word& stem) { return measure(stem) > 0; }
bool m_above_one(const Word& stem) { return measure(stem) > 1; }
bool m_above_one_st(const Word& stem) {
  return measure(stem) > 1 && !stem.empty() && (stem.back() == U's' || stem.back() == U't');
}

template <std::size_t N>
void apply_rules(Word& w, const std::array<Rule, N>& rules) {
  for (const auto& rule : rules) {
    if (!ends_with(w, rule.suffix)) continue;
    Word stem = w.substr(0, w.size() - rule.suffix.size());
    if (!rule.condition || rule.condition(stem)) {
      stem.append(rule.replacement);
      w = std::move(stem);
    }
    return;
  }
}

void step1a(Word& w) {
  static constexpr std::array<Rule, 4> rules = {{
      {U"sses", U"ss", nullptr},
      {U"ies", U"i", nullptr},
      {U"ss", U"ss", nullptr},
      {U"s", U"", nullptr},
  }};
  apply_rules(w, rules);
}

void step1b(Word& w) {
  if (ends_with(w, U"eed")) {
    Word stem = w.substr(0, w.size() - 3);
    if (measure(stem) > 0) w = stem + U"ee";
    return;
  }
  Word stem;
  if (ends_with(w, U"ed")) {
    stem = w.substr(0, w.size() - 2);
  } else if (ends_with(w, U"ing")) {
    stem = w.substr(0, w.size() - 3);
  } else {
    return;
  }
  if (!contains_vowel(stem)) return;

  if (ends_with(stem, U"at") || ends_with(stem, U"bl") || ends_with(stem, U"iz")) {
    w = stem + U"e";
  } else if (ends_double_consonant(stem)) {
    const auto last = stem.back();
    if (last != U'l' && last != U's' && last != U'z') stem.pop_back();
    w = std::move(stem);
  } else if (measure(stem) == 1 && ends_cvc(stem)) {
    w = stem + U"e";
  } else {
    w = std::move(stem);
  }
}

void step1c(Word& w) {
  if (ends_with(w, U"y")) {
    Word stem = w.substr(0, w.size() - 1);
    if (contains_vowel(stem)) w = stem + U"i";
  }
}

void step2(Word& w) {
  static constexpr std::array<Rule, 20> rules = {{
      {U"ational", U"ate", m_positive}, {U"tional", U"tion", m_positive},
      {U"enci", U"ence", m_positive},   {U"anci", U"ance", m_positive},
      {U"izer", U"ize", m_positive},    {U"abli", U"able", m_positive},
      {U"alli", U"al", m_positive},     {U"entli", U"ent", m_positive},
      {U"eli", U"e", m_positive},       {U"ousli", U"ous", m_positive},
      {U"ization", U"ize", m_positive}, {U"ation", U"ate", m_positive},
      {U"ator", U"ate", m_positive},    {U"alism", U"al", m_positive},
      {U"iveness", U"ive", m_positive}, {U"fulness", U"ful", m_positive},
      {U"ousness", U"ous", m_positive}, {U"aliti", U"al", m_positive},
      {U"iviti", U"ive", m_positive},   {U"biliti", U"ble", m_positive},
  }};
  apply_rules(w, rules);
}

void step3(Word& w) {
  static constexpr std::array<Rule, 7> rules = {{
      {U"icate", U"ic", m_positive}, {U"ative", U"", m_positive},
      {U"alize", U"al", m_positive}, {U"iciti", U"ic", m_positive},
      {U"ical", U"ic", m_positive},  {U"ful", U"", m_positive},
      {U"ness", U"", m_positive},
  }};
  apply_rules(w, rules);
}

void step4(Word& w) {
  static constexpr std::array<Rule, 19> rules = {{
      {U"al", U"", m_above_one},   {U"ance", U"", m_above_one}, {U"ence", U"", m_above_one},
      {U"er", U"", m_above_one},   {U"ic", U"", m_above_one},   {U"able", U"", m_above_one},
      {U"ible", U"", m_above_one}, {U"ant", U"", m_above_one},  {U"ement", U"", m_above_one},
      {U"ment", U"", m_above_one}, {U"ent", U"", m_above_one},  {U"ion", U"", m_above_one_st},
      {U"ou", U"", m_above_one},   {U"ism", U"", m_above_one},  {U"ate", U"", m_above_one},
      {U"iti", U"", m_above_one},  {U"ous", U"", m_above_one},  {U"ive", U"", m_above_one},
      {U"ize", U"", m_above_one},
  }};
  apply_rules(w, rules);
}

void step5a(Word& w) {
  if (!ends_with(w, U"e")) return;
  Word stem = w.substr(0, w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w = std::move(stem);
}

void step5b(Word& w) {
  if (ends_with(w, U"ll") && measure(w.substr(0, w.size() - 1)) > 1) w.pop_back();
}

Word decode(std::string_view s) {
  Word out;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
  }
  return out;
}

std::string encode(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (char32_t c : w) {
    char buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

}  // namespace

std::string porter_stem(std::string_view token) {
  if (token.empty()) return {};
  Word w = decode(token);
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return encode(w);
}

}  // namespace veritas::eval
