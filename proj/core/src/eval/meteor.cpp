#include "veritas/eval/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "veritas/error.hpp"
#include "veritas/eval/text.hpp"

namespace veritas::eval {
namespace {

std::vector<std::string> stage_keys(std::span<const std::string> tokens, MatchStage stage) {
  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const auto& t : tokens) {
    keys.push_back(stage == MatchStage::Stem ? porter_stem(t) : t);
  }
  return keys;
}

}  // namespace

void MeteorParams::validate() const {
  if (!(fmean_recall_weight > 0.0) || !(penalty_gamma > 0.0) || !(penalty_beta > 0.0)) {
    throw ValidationError("METEOR parameters must be positive");
  }
  if (match_stages.empty()) throw ValidationError("METEOR needs at least one match stage");
  std::set<MatchStage> seen(match_stages.begin(), match_stages.end());
  if (seen.size() != match_stages.size()) {
    throw ValidationError("METEOR match stages must not repeat");
  }
}

Alignment align_unigrams(std::span<const std::string> hyp, std::span<const std::string> ref,
                         std::span<const MatchStage> stages) {
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<bool> hyp_used(n, false);
  std::vector<bool> ref_used(m, false);
  Alignment alignment;

  // run[i][j]: length of the compatible, unmatched diagonal run starting at
  // (i, j). Stored flat with a zero border at i = n and j = m.
  std::vector<std::size_t> run((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return run[i * (m + 1) + j]; };

  for (const auto stage : stages) {
    const auto hyp_keys = stage_keys(hyp, stage);
    const auto ref_keys = stage_keys(ref, stage);
    for (;;) {
      std::size_t best_len = 0, best_i = 0, best_j = 0;
      std::fill(run.begin(), run.end(), 0);
      for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
          if (hyp_used[i] || ref_used[j] || hyp_keys[i] != ref_keys[j]) continue;
          at(i, j) = 1 + at(i + 1, j + 1);
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (at(i, j) > best_len) {
            best_len = at(i, j);
            best_i = i;
            best_j = j;
          }
        }
      }
      if (best_len == 0) break;
      for (std::size_t k = 0; k < best_len; ++k) {
        hyp_used[best_i + k] = true;
        ref_used[best_j + k] = true;
        alignment.pairs.emplace_back(best_i + k, best_j + k);
      }
    }
  }

  std::sort(alignment.pairs.begin(), alignment.pairs.end());
  alignment.match_count = alignment.pairs.size();
  for (std::size_t k = 0; k < alignment.pairs.size(); ++k) {
    const bool continues = k > 0 && alignment.pairs[k].first == alignment.pairs[k - 1].first + 1 &&
                           alignment.pairs[k].second == alignment.pairs[k - 1].second + 1;
    if (!continues) ++alignment.chunk_count;
  }
  return alignment;
}

MeteorBreakdown meteor_tokens(std::span<const std::string> hyp, std::span<const std::string> ref,
                              const MeteorParams& params) {
  params.validate();
  MeteorBreakdown out;
  if (hyp.empty() || ref.empty()) return out;
  out.alignment = align_unigrams(hyp, ref, params.match_stages);
  const auto matches = static_cast<double>(out.alignment.match_count);
  if (out.alignment.match_count == 0) return out;

  out.precision = matches / static_cast<double>(hyp.size());
  out.recall = matches / static_cast<double>(ref.size());
  const double w = params.fmean_recall_weight;
  out.fmean = (1.0 + w) * out.precision * out.recall / (out.recall + w * out.precision);
  const double fragmentation = static_cast<double>(out.alignment.chunk_count) / matches;
  out.penalty = params.penalty_gamma * std::pow(fragmentation, params.penalty_beta);
  out.score = out.fmean * (1.0 - out.penalty);
  return out;
}

double meteor(std::string_view hypothesis, std::string_view reference, const MeteorParams& params) {
  const auto hyp = tokenize(hypothesis);
  const auto ref = tokenize(reference);
  return meteor_tokens(hyp, ref, params).score;
}

}  // namespace veritas::eval
