#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace veritas::eval {

// Splits UTF-8 text on every code point that is not a Unicode letter or
// digit and lowercases the pieces. Invalid byte sequences act as
// separators. "COVID-19 claims!" -> {"covid", "19", "claims"}.
std::vector<std::string> tokenize(std::string_view text);

// Porter (1980) stemmer, as published: every step applies to tokens of any
// length (no short-word exemption). Expects a lowercase token.
std::string porter_stem(std::string_view token);

}  // namespace veritas::eval
