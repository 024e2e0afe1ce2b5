#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace veritas::eval {

enum class MatchStage { Exact, Stem };

struct MeteorParams {
  double fmean_recall_weight = 9.0;  // Fmean = (1+w)PR / (R + wP)
  double penalty_gamma = 0.5;
  double penalty_beta = 3.0;
  std::vector<MatchStage> match_stages{MatchStage::Exact, MatchStage::Stem};

  // Throws ValidationError for non-positive parameters or empty/duplicate
  // stage lists.
  void validate() const;
};

struct Alignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (hyp, ref), sorted by hyp
  std::size_t match_count = 0;
  std::size_t chunk_count = 0;
};

// Stage-wise unigram alignment. A stage only considers tokens left
// unmatched by earlier stages. Within a stage the longest run of tokens that
// are compatible and contiguous in both sequences is aligned first (ties:
// smallest hyp index, then smallest ref index), repeatedly, until no
// compatible pair remains. This keeps the match count maximal while
// avoiding needless fragmentation. Chunks are counted over the final pair
// set: maximal runs contiguous and order-preserving on both sides.
Alignment align_unigrams(std::span<const std::string> hyp, std::span<const std::string> ref,
                         std::span<const MatchStage> stages);

struct MeteorBreakdown {
  double precision = 0.0;
  double recall = 0.0;
  double fmean = 0.0;
  double penalty = 0.0;
  double score = 0.0;
  Alignment alignment;
};

// Score over already tokenized input.
MeteorBreakdown meteor_tokens(std::span<const std::string> hyp, std::span<const std::string> ref,
                              const MeteorParams& params = {});

// P = m/|hyp|, R = m/|ref|, penalty = gamma * (chunks/m)^beta,
// score = Fmean * (1 - penalty); 0 when m = 0 or either side is empty.
double meteor(std::string_view hypothesis, std::string_view reference,
              const MeteorParams& params = {});

}  // namespace veritas::eval
