#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relind/bayes.hpp"
#include "relind/dataset.hpp"
#include "relind/embedding.hpp"

namespace relind {

// Offset baseline: score a candidate pair by the cosine between the
// candidate target and source + average training translation.
struct ThreeCosAvgModel {
  Eigen::VectorXd average_translation;
};

ThreeCosAvgModel fit_three_cos_avg(const WordEmbedding& embedding,
                                   std::span<const WordPair> pairs);

// Throws DataError when either cosine operand has zero norm.
double score_three_cos_avg(const ThreeCosAvgModel& model, const WordEmbedding& embedding,
                           std::string_view source, std::string_view target);

// Type-and-similarity baseline: the product of the source and target type
// Bayes factors with the raw cosine of the two vectors, computed in
// linear space with the sign carried by the cosine.
struct LRCosModel {
  int dimension = 0;
  std::vector<UnivariatePredictive> source_predictive;
  std::vector<UnivariatePredictive> target_predictive;
};

LRCosModel fit_lrcos(const WordEmbedding& embedding, std::span<const WordPair> pairs);

double score_lrcos(const LRCosModel& model, const WordEmbedding& embedding,
                   std::string_view source, std::string_view target);

// Linear separator on difference vectors trained with a class-weighted
// hinge loss plus (1/(2C))*||w||^2, minimized by deterministic full-batch
// subgradient descent (fixed epoch count, epoch-indexed step sizes, fixed
// summation order). The loss term averages over examples, so duplicating
// the training set leaves the trajectory unchanged up to float summation
// order, and flipping all labels exactly negates it.
struct MarginClassifier {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double c = 1.0;
  double positive_weight = 1.0;
  double negative_weight = 1.0;

  double score(const Eigen::VectorXd& difference) const {
    return weights.dot(difference) + bias;
  }
};

// Requires both classes nonempty and consistent dimensions.
MarginClassifier train_margin_classifier(std::span<const Eigen::VectorXd> positives,
                                         std::span<const Eigen::VectorXd> negatives,
                                         double c, double positive_weight,
                                         double negative_weight);

// Negative pool for the classifier, built from n training pairs (s_i, t_i):
// the n swapped pairs (t_i, s_i); up to n shuffled-target pairs (s_i, t_j)
// with j != i that do not collide with training pairs; and n random
// vocabulary pairs. Impossible draws are skipped with a warning.
// negative_weight is n_positive / n_negative.
struct MarginTrainingSet {
  std::vector<Eigen::VectorXd> positives;  // t_i - s_i
  std::vector<Eigen::VectorXd> negatives;
  double negative_weight = 1.0;
  std::vector<std::string> warnings;
};

MarginTrainingSet assemble_margin_training(const WordEmbedding& embedding,
                                           std::span<const WordPair> pairs,
                                           std::uint64_t seed);

double score_margin(const MarginClassifier& model, const WordEmbedding& embedding,
                    std::string_view source, std::string_view target);

// The C grid searched during evaluation, ascending.
std::span<const double> margin_c_grid();

}  // namespace relind
