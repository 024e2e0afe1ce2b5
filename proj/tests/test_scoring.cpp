#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "veritas/error.hpp"
#include "veritas/eval/report.hpp"
#include "veritas/eval/scoring.hpp"

using namespace veritas;
using namespace veritas::eval;
using Strings = std::vector<std::string>;

namespace {

// Best sum over every injective assignment between the two lists, divided
// by the reference count.
double enumerate_hungarian_meteor(const Strings& gen, const Strings& refs) {
  if (gen.empty()) return 0.0;
  const bool gen_small = gen.size() <= refs.size();
  const std::size_t small = std::min(gen.size(), refs.size());
  std::vector<std::size_t> perm(std::max(gen.size(), refs.size()));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double total = 0.0;
    for (std::size_t k = 0; k < small; ++k) {
      total += gen_small ? meteor(gen[k], refs[perm[k]]) : meteor(gen[perm[k]], refs[k]);
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(refs.size());
}

ClaimScore score(bool correct, double qa) {
  ClaimScore s;
  s.label_correct = correct;
  s.q_plus_a = qa;
  return s;
}

VerdictPrediction prediction_from_gold(const ClaimRecord& gold) {
  VerdictPrediction p;
  p.claim_id = gold.claim_id;
  p.label = *gold.gold_label;
  p.evidence.claim_id = gold.claim_id;
  p.evidence.question = gold.gold_evidence.front().question;
  int rank = 1;
  for (const auto& qa : gold.gold_evidence) {
    for (const auto& a : qa.answers) p.evidence.answers.push_back({a, "", rank++, qa.question});
  }
  return p;
}

constexpr auto S = VerdictLabel::Supported;
constexpr auto R = VerdictLabel::Refuted;
constexpr auto N = VerdictLabel::NotEnoughEvidence;
constexpr auto C = VerdictLabel::ConflictingEvidence;

}  // namespace

TEST_CASE("hungarian_meteor examples") {
  CHECK(hungarian_meteor(Strings{}, Strings{"a b c"}) == 0.0);
  CHECK_THROWS_AS(hungarian_meteor(Strings{"a"}, Strings{}), ValidationError);

  const Strings refs = {"the cat sat on the mat", "dogs bark loudly at night", "rain falls"};
  CHECK(hungarian_meteor(refs, refs) ==
        doctest::Approx((meteor(refs[0], refs[0]) + meteor(refs[1], refs[1]) +
                         meteor(refs[2], refs[2])) / 3.0));

  const Strings one = {"the cat sat"};
  double best = 0.0;
  for (const auto& r : refs) best = std::max(best, meteor(one[0], r));
  CHECK(hungarian_meteor(one, refs) == doctest::Approx(best / 3.0));
}

TEST_CASE("hungarian_meteor equals exhaustive enumeration") {
  std::mt19937 rng(17);
  const Strings vocab = {"the", "cat", "sat", "on", "mat", "dog", "ran", "running", "is", "it",
                         "true", "paris", "tower"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), len(1, 6), count(0, 4);
  auto sentence = [&] {
    std::string s;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) s += (i ? " " : "") + vocab[word(rng)];
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Strings gen(count(rng)), refs(std::max<std::size_t>(1, count(rng)));
    for (auto& g : gen) g = sentence();
    for (auto& r : refs) r = sentence();
    CHECK(hungarian_meteor(gen, refs) == doctest::Approx(enumerate_hungarian_meteor(gen, refs)).epsilon(1e-12));

    // Monotone in the generated list.
    auto more = gen;
    more.push_back(sentence());
    CHECK(hungarian_meteor(more, refs) >= hungarian_meteor(gen, refs) - 1e-12);
  }
}

TEST_CASE("generated and reference strings") {
  EvidenceSet e{1, "Is it true?", {{"Yes.", "1/0", 1, std::nullopt},
                                   {"No.", "1/1", 2, std::nullopt},
                                   {"Maybe.", "1/2", 3, std::string("Was it denied?")},
                                   {"Extra.", "1/3", 4, std::nullopt}}};
  EvalConfig cfg;
  auto g = generated_strings(e, cfg);
  CHECK(g.questions == Strings{"Is it true?", "Was it denied?"});
  CHECK(g.qa == Strings{"Is it true? Yes.", "Is it true? No.", "Was it denied? Maybe."});

  cfg.dedupe_questions = false;
  cfg.top_k = 0;
  g = generated_strings(e, cfg);
  CHECK(g.questions == Strings{"Is it true?", "Is it true?", "Was it denied?", "Is it true?"});
  CHECK(g.qa.size() == 4);

  e.answers.clear();
  g = generated_strings(e, EvalConfig{});
  CHECK(g.questions == Strings{"Is it true?"});
  CHECK(g.qa.empty());

  ClaimRecord gold{1, "c", S, {{"Q1?", {"A", "B"}}, {"Q2?", {"C"}}}, std::nullopt};
  const auto r = reference_strings(gold);
  CHECK(r.questions == Strings{"Q1?", "Q2?"});
  CHECK(r.qa == Strings{"Q1? A", "Q1? B", "Q2? C"});
}

TEST_CASE("score_claim") {
  ClaimRecord gold{3, "c", R, {{"Where is the Eiffel Tower?", {"In Paris, France."}}}, std::nullopt};
  auto p = prediction_from_gold(gold);
  auto s = score_claim(p, gold, EvalConfig{});
  REQUIRE(s.has_value());
  CHECK(s->label_correct);
  CHECK(s->counted);
  CHECK(s->q_plus_a >= 0.25);
  CHECK(s->q_only == doctest::Approx(meteor(gold.gold_evidence[0].question, gold.gold_evidence[0].question)));

  p.label = S;
  p.evidence.question = "Completely unrelated words here?";
  p.evidence.answers = {{"nothing matches", "", 1, std::nullopt}};
  s = score_claim(p, gold, EvalConfig{});
  CHECK_FALSE(s->label_correct);
  CHECK_FALSE(s->counted);
  CHECK(s->q_plus_a < 0.25);

  ClaimRecord unlabeled = gold;
  unlabeled.gold_label.reset();
  CHECK_FALSE(score_claim(p, unlabeled, EvalConfig{}).has_value());
  ClaimRecord no_evidence = gold;
  no_evidence.gold_evidence.clear();
  CHECK_FALSE(score_claim(p, no_evidence, EvalConfig{}).has_value());
  p.claim_id = 4;
  CHECK_THROWS_AS(score_claim(p, gold, EvalConfig{}), ValidationError);
}

TEST_CASE("averitec score threshold semantics") {
  const EvalConfig cfg;
  const std::vector<ClaimScore> three = {score(true, 0.3), score(true, 0.2), score(false, 0.9)};
  CHECK(averitec_score(three, cfg) == doctest::Approx(1.0 / 3.0));
  CHECK(averitec_score(std::vector<ClaimScore>{score(true, 0.25)}, cfg) == 1.0);
  CHECK(averitec_score(std::vector<ClaimScore>{score(true, 0.2)}, cfg) == 0.0);
  CHECK(averitec_score(std::vector<ClaimScore>{score(true, 1.0), score(true, 1.0)}, cfg) == 1.0);
  CHECK(averitec_score(std::vector<ClaimScore>{score(false, 1.0), score(false, 0.5)}, cfg) == 0.0);
  CHECK_THROWS_AS(averitec_score(std::vector<ClaimScore>{}, cfg), ValidationError);
}

TEST_CASE("classification report: 12-item fixture") {
  // Three gold items per class, one error each: S->R, R->S, N->R, C->N.
  const std::vector<VerdictLabel> gold = {S, S, S, R, R, R, N, N, N, C, C, C};
  const std::vector<VerdictLabel> pred = {S, S, R, R, R, S, N, N, R, C, C, N};
  const auto rep = classification_report(pred, gold);
  CHECK(rep.accuracy == doctest::Approx(8.0 / 12.0).epsilon(1e-12));
  CHECK(rep.per_class[0].f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rep.per_class[1].f1 == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(rep.per_class[2].f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rep.per_class[3].f1 == doctest::Approx(4.0 / 5.0).epsilon(1e-12));
  CHECK(rep.macro_f1 == doctest::Approx(71.0 / 105.0).epsilon(1e-12));
  CHECK(rep.per_class[1].precision == doctest::Approx(0.5));
  CHECK(rep.per_class[3].precision == 1.0);
  CHECK(rep.confusion[0] == std::array<std::size_t, 4>{2, 1, 0, 0});
  CHECK(rep.confusion[2] == std::array<std::size_t, 4>{0, 1, 2, 0});
  CHECK(rep.confusion[3] == std::array<std::size_t, 4>{0, 0, 1, 2});
}

TEST_CASE("classification report edge cases") {
  const std::vector<VerdictLabel> all = {S, R, N, C};
  auto rep = classification_report(all, all);
  CHECK(rep.accuracy == 1.0);
  CHECK(rep.macro_f1 == 1.0);

  const std::vector<VerdictLabel> gold = {R, R};
  rep = classification_report(gold, gold);
  CHECK(rep.per_class[0].f1 == 0.0);  // absent class
  CHECK(rep.macro_f1 == 0.25);

  std::vector<VerdictLabel> dev_gold;
  dev_gold.insert(dev_gold.end(), 122, S);
  dev_gold.insert(dev_gold.end(), 305, R);
  dev_gold.insert(dev_gold.end(), 35, N);
  dev_gold.insert(dev_gold.end(), 38, C);
  const std::vector<VerdictLabel> always_r(500, R);
  CHECK(classification_report(always_r, dev_gold).accuracy == 0.61);

  CHECK_THROWS_AS(classification_report(std::vector<VerdictLabel>{S}, gold), ValidationError);
  CHECK_THROWS_AS(classification_report({}, {}), ValidationError);
}

TEST_CASE("evaluate_run") {
  const std::vector<ClaimRecord> gold = {
      {0, "a", R, {{"Where is the tower?", {"In Paris."}}}, std::nullopt},
      {1, "b", S, {{"Does water boil at 100 C?", {"Yes, at sea level.", "Yes."}}}, std::nullopt},
      {2, "c", std::nullopt, {{"Q?", {"A"}}}, std::nullopt},
      {3, "d", N, {{"Q3?", {"A3"}}}, std::nullopt},
  };
  std::vector<VerdictPrediction> preds = {prediction_from_gold(gold[0]), prediction_from_gold(gold[1])};
  preds[1].label = C;
  VerdictPrediction unlabeled;
  unlabeled.claim_id = 2;
  unlabeled.evidence = {2, "Q?", {{"A", "", 1, std::nullopt}}};
  preds.push_back(unlabeled);

  const auto rep = evaluate_run(preds, gold, EvalConfig{});
  CHECK(rep.per_claim.size() == 2);
  REQUIRE(rep.excluded.size() == 1);
  CHECK(rep.excluded[0].claim_id == 2);
  CHECK(rep.missing_predictions == 1);
  CHECK(rep.classification.accuracy == 0.5);
  CHECK(rep.averitec == 0.5);
  CHECK(rep.averitec <= rep.classification.accuracy);
  std::size_t total = 0;
  for (const auto& row : rep.classification.confusion) for (auto v : row) total += v;
  CHECK(total == rep.per_claim.size());

  auto bad = preds;
  bad[0].claim_id = 99;
  try {
    evaluate_run(bad, gold, EvalConfig{});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("99") != std::string::npos);
  }
  bad = preds;
  bad.push_back(preds[0]);
  CHECK_THROWS_AS(evaluate_run(bad, gold, EvalConfig{}), ValidationError);
  CHECK_THROWS_AS(evaluate_run(std::vector<VerdictPrediction>{unlabeled}, gold, EvalConfig{}),
                  ValidationError);
  EvalConfig bad_cfg;
  bad_cfg.qa_threshold = 1.5;
  CHECK_THROWS_AS(evaluate_run(preds, gold, bad_cfg), ValidationError);
}

TEST_CASE("report serialization and rendering") {
  const std::vector<ClaimRecord> gold = {
      {0, "a", R, {{"Where is the tower?", {"In Paris."}}}, std::nullopt},
      {1, "b", C, {{"Was it cherry-picked?", {"Partly."}}}, std::nullopt},
  };
  std::vector<VerdictPrediction> preds = {prediction_from_gold(gold[0]), prediction_from_gold(gold[1])};
  preds[1].label = N;
  const auto rep = evaluate_run(preds, gold, EvalConfig{});

  const auto j = report_to_json(rep);
  CHECK(j["per_class"].size() == 4);
  CHECK(j["confusion"]["labels"][3] == "Conflicting Evidence/Cherrypicking");
  CHECK(report_from_json(j) == rep);
  CHECK(report_from_json(Json::parse(j.dump())) == rep);
  Json broken = j;
  broken.erase("q_only");
  CHECK_THROWS_AS(report_from_json(broken), ValidationError);

  CHECK(headline(rep).rfind("Q: ", 0) == 0);
  CHECK(headline(rep).find("  Q+A: ") != std::string::npos);
  CHECK(headline(rep).find("  Averitec: 0.50") != std::string::npos);

  const auto text = render_text(rep);
  CHECK(text.find("Confusion matrix (rows = gold, columns = predicted)") != std::string::npos);
  CHECK(text.find("  C |   0   0   1   0") != std::string::npos);
  CHECK(text.find("Macro F1") != std::string::npos);

  const auto csv = render_csv(rep);
  CHECK(csv.rfind("claim_id,gold,predicted,label_correct,q_only,q_plus_a,counted\n", 0) == 0);
  CHECK(csv.find("\n1,Conflicting Evidence/Cherrypicking,Not Enough Evidence,0,") != std::string::npos);
}
