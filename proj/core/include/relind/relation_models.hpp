#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "relind/bayes.hpp"
#include "relind/dataset.hpp"
#include "relind/embedding.hpp"

namespace relind {

// Additive decomposition of a pair score. Every term is a log Bayes
// factor: log of a density under the relation-specific model minus log of
// the corresponding background density. total is the exact floating-point
// sum of the three parts.
struct ScoreBreakdown {
  double source_type_lbf = 0.0;
  double target_type_lbf = 0.0;
  double relation_lbf = 0.0;
  double total = 0.0;
};

// Models the relation as a soft translation: per coordinate, independent
// flat-prior predictives for source values, target values, and the
// differences target - source. The difference predictive is judged
// against a predictive fitted on differences of mismatched pairs
// (t_k - s_l with l != k) drawn with the stored seed, whose locations are
// overwritten with the matched ones so only spread separates them.
struct TranslationRelationModel {
  int dimension = 0;
  int pair_count = 0;
  std::uint64_t seed = 0;
  std::vector<UnivariatePredictive> source_predictive;
  std::vector<UnivariatePredictive> target_predictive;
  std::vector<UnivariatePredictive> diff_predictive;
  std::vector<UnivariatePredictive> cross_predictive;
};

// Requires >= 2 pairs, all words in the vocabulary (the error lists every
// missing word). Same seed and pairs give a bit-identical model.
TranslationRelationModel fit_translation(const WordEmbedding& embedding,
                                         std::span<const WordPair> pairs,
                                         std::uint64_t seed);

ScoreBreakdown score_translation(const TranslationRelationModel& model,
                                 const WordEmbedding& embedding, std::string_view source,
                                 std::string_view target);

// Models the target as a Bayesian linear function of the source projected
// onto the top-k right singular vectors of the stacked training sources.
// k defaults to max(1, floor((n-1)/2)) clamped to [1, min(m, n-2)]. The
// target type factor cancels in this formulation and is reported as zero.
struct RegressionRelationModel {
  int dimension = 0;
  int pair_count = 0;
  int k = 0;
  std::vector<UnivariatePredictive> source_predictive;
  LowRankBasis basis;
  std::vector<BayesRegressionPredictive> coordinate_models;  // one per target coordinate
};

// Requires >= 4 pairs (so df >= 1 at the default k) and in-vocabulary
// words. k_override, when given, is clamped to the same valid range.
RegressionRelationModel fit_regression(const WordEmbedding& embedding,
                                       std::span<const WordPair> pairs,
                                       std::optional<int> k_override = std::nullopt);

ScoreBreakdown score_regression(const RegressionRelationModel& model,
                                const WordEmbedding& embedding, std::string_view source,
                                std::string_view target);

}  // namespace relind
