#include "veritas/eval/report.hpp"

#include <cstdio>

#include "veritas/error.hpp"

namespace veritas::eval {
namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

VerdictLabel label_field(const Json& j, const char* key) {
  const auto text = j.at(key).get<std::string>();
  const auto label = label_from_string(text);
  if (!label) throw ValidationError(std::string("unknown label in report: ") + text);
  return *label;
}

}  // namespace

Json report_to_json(const RunReport& report) {
  Json j;
  j["q_only"] = report.q_only;
  j["q_plus_a"] = report.q_plus_a;
  j["averitec"] = report.averitec;
  j["accuracy"] = report.classification.accuracy;
  j["macro_f1"] = report.classification.macro_f1;

  Json per_class = Json::array();
  Json labels = Json::array();
  for (const auto label : kAllLabels) {
    const auto& s = report.classification.per_class[label_index(label)];
    labels.push_back(display_name(label));
    per_class.push_back({{"label", display_name(label)},
                         {"precision", s.precision},
                         {"recall", s.recall},
                         {"f1", s.f1},
                         {"support", s.support}});
  }
  j["per_class"] = std::move(per_class);
  j["confusion"] = {{"labels", labels}, {"matrix", report.classification.confusion}};
  j["config"] = {{"qa_threshold", report.qa_threshold},
                 {"top_k", report.top_k},
                 {"dedupe_questions", report.dedupe_questions}};
  j["scored_claims"] = report.per_claim.size();
  j["missing_predictions"] = report.missing_predictions;

  Json excluded = Json::array();
  for (const auto& e : report.excluded) {
    excluded.push_back({{"claim_id", e.claim_id}, {"reason", e.reason}});
  }
  j["excluded"] = std::move(excluded);

  Json rows = Json::array();
  for (const auto& c : report.per_claim) {
    rows.push_back({{"claim_id", c.claim_id},
                    {"gold", display_name(c.gold)},
                    {"predicted", display_name(c.predicted)},
                    {"q_only", c.q_only},
                    {"q_plus_a", c.q_plus_a},
                    {"label_correct", c.label_correct},
                    {"counted", c.counted}});
  }
  j["per_claim"] = std::move(rows);
  return j;
}

RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.q_only = j.at("q_only").get<double>();
    r.q_plus_a = j.at("q_plus_a").get<double>();
    r.averitec = j.at("averitec").get<double>();
    r.classification.accuracy = j.at("accuracy").get<double>();
    r.classification.macro_f1 = j.at("macro_f1").get<double>();

    for (const auto& row : j.at("per_class")) {
      auto& s = r.classification.per_class[label_index(label_field(row, "label"))];
      s.precision = row.at("precision").get<double>();
      s.recall = row.at("recall").get<double>();
      s.f1 = row.at("f1").get<double>();
      s.support = row.at("support").get<std::size_t>();
    }

    const auto& confusion = j.at("confusion");
    const auto& labels = confusion.at("labels");
    const auto& matrix = confusion.at("matrix");
    if (labels.size() != kLabelCount || matrix.size() != kLabelCount) {
      throw ValidationError("confusion matrix must be 4x4");
    }
    for (std::size_t g = 0; g < kLabelCount; ++g) {
      const auto gi = label_index(*label_from_string(labels[g].get<std::string>()));
      if (matrix[g].size() != kLabelCount) throw ValidationError("confusion matrix must be 4x4");
      for (std::size_t p = 0; p < kLabelCount; ++p) {
        const auto pi = label_index(*label_from_string(labels[p].get<std::string>()));
        r.classification.confusion[gi][pi] = matrix[g][p].get<std::size_t>();
      }
    }

    const auto& config = j.at("config");
    r.qa_threshold = config.at("qa_threshold").get<double>();
    r.top_k = config.at("top_k").get<std::size_t>();
    r.dedupe_questions = config.at("dedupe_questions").get<bool>();
    r.missing_predictions = j.at("missing_predictions").get<std::size_t>();

    for (const auto& e : j.at("excluded")) {
      r.excluded.push_back({e.at("claim_id").get<ClaimId>(), e.at("reason").get<std::string>()});
    }
    for (const auto& row : j.at("per_claim")) {
      ClaimScore c;
      c.claim_id = row.at("claim_id").get<ClaimId>();
      c.gold = label_field(row, "gold");
      c.predicted = label_field(row, "predicted");
      c.q_only = row.at("q_only").get<double>();
      c.q_plus_a = row.at("q_plus_a").get<double>();
      c.label_correct = row.at("label_correct").get<bool>();
      c.counted = row.at("counted").get<bool>();
      r.per_claim.push_back(c);
    }
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  } catch (const std::bad_optional_access&) {
    throw ValidationError("malformed report: unknown confusion label");
  }
}

std::string headline(const RunReport& report) {
  return "Q: " + fixed(report.q_only, 2) + "  Q+A: " + fixed(report.q_plus_a, 2) +
         "  Averitec: " + fixed(report.averitec, 2);
}

std::string render_text(const RunReport& report) {
  const auto& cls = report.classification;
  std::string out;
  out += "Scored claims: " + std::to_string(report.per_claim.size());
  if (!report.excluded.empty()) out += " (" + std::to_string(report.excluded.size()) + " excluded)";
  if (report.missing_predictions) {
    out += ", gold claims without prediction: " + std::to_string(report.missing_predictions);
  }
  out += "\nQ+A threshold: " + fixed(report.qa_threshold, 2) + "\n\n";

  out += "  Q-only  Q+A     Averitec  Accuracy\n";
  out += "  " + pad_right(fixed(report.q_only, 4), 8) + pad_right(fixed(report.q_plus_a, 4), 8) +
         pad_right(fixed(report.averitec, 4), 10) + fixed(cls.accuracy, 4) + "\n\n";

  constexpr std::size_t kNameWidth = 36;
  out += "  " + pad_right("Class", kNameWidth) + "Precision  Recall  F1      Support\n";
  for (const auto label : kAllLabels) {
    const auto& s = cls.per_class[label_index(label)];
    out += "  " + pad_right(std::string(display_name(label)), kNameWidth) +
           pad_right(fixed(s.precision, 4), 11) + pad_right(fixed(s.recall, 4), 8) +
           pad_right(fixed(s.f1, 4), 8) + std::to_string(s.support) + "\n";
  }
  out += "  " + pad_right("Macro F1", kNameWidth) + std::string(19, ' ') + fixed(cls.macro_f1, 4) +
         "\n\n";

  std::size_t width = 4;
  for (const auto& row : cls.confusion) {
    for (auto v : row) width = std::max(width, std::to_string(v).size() + 1);
  }
  out += "Confusion matrix (rows = gold, columns = predicted)\n";
  std::string rule = "  --+" + std::string(width * kLabelCount, '-') + "\n";
  out += "    |";
  for (const auto label : kAllLabels) out += pad_left(std::string(1, short_code(label)), width);
  out += "\n" + rule;
  for (const auto g : kAllLabels) {
    out += "  " + std::string(1, short_code(g)) + " |";
    for (const auto p : kAllLabels) {
      out += pad_left(std::to_string(cls.confusion[label_index(g)][label_index(p)]), width);
    }
    out += "\n";
  }
  out += rule;
  out += "  S = Supported, R = Refuted, N = Not Enough Evidence,\n"
         "  C = Conflicting Evidence/Cherrypicking\n\n";
  out += headline(report) + "\n";
  return out;
}

std::string render_csv(const RunReport& report) {
  std::string out = "claim_id,gold,predicted,label_correct,q_only,q_plus_a,counted\n";
  for (const auto& c : report.per_claim) {
    out += std::to_string(c.claim_id) + "," + std::string(display_name(c.gold)) + "," +
           std::string(display_name(c.predicted)) + "," + (c.label_correct ? "1" : "0") + "," +
           fixed(c.q_only, 6) + "," + fixed(c.q_plus_a, 6) + "," + (c.counted ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace veritas::eval
