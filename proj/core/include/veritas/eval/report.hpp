#pragma once

#include <string>

#include "veritas/eval/scoring.hpp"
#include "veritas/records.hpp"

namespace veritas::eval {

Json report_to_json(const RunReport& report);
// Throws ValidationError on missing or mistyped fields.
RunReport report_from_json(const Json& j);

// "Q: 0.42  Q+A: 0.31  Averitec: 0.27"
std::string headline(const RunReport& report);

// Score table, class-wise table and confusion matrix as aligned plain text.
std::string render_text(const RunReport& report);

// One row per scored claim, with a header row.
std::string render_csv(const RunReport& report);

}  // namespace veritas::eval
