#include "relind/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <utility>

#include "relind/errors.hpp"
#include "relind/rng.hpp"

namespace relind {

namespace {

constexpr std::array<double, 5> kCGrid = {0.01, 0.1, 1.0, 10.0, 100.0};
constexpr int kMarginEpochs = 200;
constexpr int kSampleRetries = 64;

const Eigen::VectorXd& require_word(const WordEmbedding& embedding,
                                    std::string_view word) {
  const Eigen::VectorXd* v = embedding.lookup(word);
  if (v == nullptr) {
    throw DataError("words missing from the vocabulary: '" + std::string(word) + "'");
  }
  return *v;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DataError("cosine of a zero-norm vector");
  return a.dot(b) / (na * nb);
}

std::vector<double> column(const Eigen::MatrixXd& data, Eigen::Index j) {
  std::vector<double> out(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index i = 0; i < data.rows(); ++i) out[static_cast<std::size_t>(i)] = data(i, j);
  return out;
}

}  // namespace

std::span<const double> margin_c_grid() { return kCGrid; }

ThreeCosAvgModel fit_three_cos_avg(const WordEmbedding& embedding,
                                   std::span<const WordPair> pairs) {
  if (pairs.empty()) throw DataError("offset baseline needs at least 1 pair");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(embedding.dimension());
  for (const auto& pair : pairs) {
    sum += require_word(embedding, pair.target) - require_word(embedding, pair.source);
  }
  return ThreeCosAvgModel{sum / static_cast<double>(pairs.size())};
}

double score_three_cos_avg(const ThreeCosAvgModel& model, const WordEmbedding& embedding,
                           std::string_view source, std::string_view target) {
  const Eigen::VectorXd& ps = require_word(embedding, source);
  const Eigen::VectorXd& pt = require_word(embedding, target);
  return cosine(pt, ps + model.average_translation);
}

LRCosModel fit_lrcos(const WordEmbedding& embedding, std::span<const WordPair> pairs) {
  if (pairs.size() < 2) {
    throw DataError("type baseline needs at least 2 pairs, got " +
                    std::to_string(pairs.size()));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
  const Eigen::Index m = embedding.dimension();
  Eigen::MatrixXd sources(n, m), targets(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    sources.row(i) = require_word(embedding, pairs[static_cast<std::size_t>(i)].source);
    targets.row(i) = require_word(embedding, pairs[static_cast<std::size_t>(i)].target);
  }
  LRCosModel model;
  model.dimension = static_cast<int>(m);
  model.source_predictive.reserve(static_cast<std::size_t>(m));
  model.target_predictive.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    model.source_predictive.push_back(fit_univariate_predictive(column(sources, j)));
    model.target_predictive.push_back(fit_univariate_predictive(column(targets, j)));
  }
  return model;
}

double score_lrcos(const LRCosModel& model, const WordEmbedding& embedding,
                   std::string_view source, std::string_view target) {
  const Eigen::VectorXd& ps = require_word(embedding, source);
  const Eigen::VectorXd& pt = require_word(embedding, target);
  if (ps.size() != model.dimension) {
    throw DataError("embedding dimension does not match the fitted model");
  }
  double source_fit = 0.0, target_fit = 0.0;
  for (int j = 0; j < model.dimension; ++j) {
    const auto js = static_cast<std::size_t>(j);
    source_fit += model.source_predictive[js].logpdf(ps[j]);
    target_fit += model.target_predictive[js].logpdf(pt[j]);
  }
  const double source_lbf = source_fit - embedding.background_logpdf(ps);
  const double target_lbf = target_fit - embedding.background_logpdf(pt);
  const double c = cosine(ps, pt);
  if (c == 0.0) return 0.0;
  // Literal product of the three factors, sign carried by the cosine.
  const double sign = c > 0.0 ? 1.0 : -1.0;
  return sign * std::exp(source_lbf + target_lbf + std::log(std::abs(c)));
}

MarginClassifier train_margin_classifier(std::span<const Eigen::VectorXd> positives,
                                         std::span<const Eigen::VectorXd> negatives,
                                         double c, double positive_weight,
                                         double negative_weight) {
  if (positives.empty() || negatives.empty()) {
    throw DataError("margin training needs both classes nonempty");
  }
  if (!(c > 0.0)) throw ConfigError("margin C must be positive");
  const Eigen::Index m = positives.front().size();
  for (const auto& v : positives) {
    if (v.size() != m) throw DataError("inconsistent dimensions in margin positives");
  }
  for (const auto& v : negatives) {
    if (v.size() != m) throw DataError("inconsistent dimensions in margin negatives");
  }

  const double n_total = static_cast<double>(positives.size() + negatives.size());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  double b = 0.0;
  Eigen::VectorXd sum_pos(m), sum_neg(m);

  // Full-batch subgradient steps on
  //   (1/N) sum_j cw_j * max(0, 1 - y_j (w.x_j + b)) + ||w||^2 / (2C)
  // with step C/e at epoch e. The first step lands on C * mean hinge
  // gradient, later ones contract by (1 - 1/e); no randomness anywhere.
  // Class sums are accumulated separately and combined symmetrically so
  // that flipping the labels negates the trajectory exactly.
  for (int epoch = 1; epoch <= kMarginEpochs; ++epoch) {
    sum_pos.setZero();
    sum_neg.setZero();
    double count_pos = 0.0, count_neg = 0.0;
    for (const auto& x : positives) {
      if (w.dot(x) + b < 1.0) {
        sum_pos += x;
        count_pos += 1.0;
      }
    }
    for (const auto& x : negatives) {
      if (-(w.dot(x) + b) < 1.0) {
        sum_neg += x;
        count_neg += 1.0;
      }
    }
    const double eta = c / static_cast<double>(epoch);
    const double shrink = 1.0 - 1.0 / static_cast<double>(epoch);
    w = shrink * w +
        (eta / n_total) * (positive_weight * sum_pos - negative_weight * sum_neg);
    b += (eta / n_total) * (positive_weight * count_pos - negative_weight * count_neg);
  }

  MarginClassifier model;
  model.weights = std::move(w);
  model.bias = b;
  model.c = c;
  model.positive_weight = positive_weight;
  model.negative_weight = negative_weight;
  return model;
}

MarginTrainingSet assemble_margin_training(const WordEmbedding& embedding,
                                           std::span<const WordPair> pairs,
                                           std::uint64_t seed) {
  const std::size_t n = pairs.size();
  if (n == 0) throw DataError("margin training set needs at least 1 pair");
  if (embedding.size() < 2) {
    throw DataError("vocabulary too small to draw random word pairs");
  }

  MarginTrainingSet out;
  std::set<std::pair<std::string, std::string>> training_set;
  for (const auto& pair : pairs) {
    require_word(embedding, pair.source);
    require_word(embedding, pair.target);
    training_set.emplace(pair.source, pair.target);
  }

  auto diff = [&](const WordPair& pair) {
    return Eigen::VectorXd(*embedding.lookup(pair.target) - *embedding.lookup(pair.source));
  };

  out.positives.reserve(n);
  for (const auto& pair : pairs) out.positives.push_back(diff(pair));

  // Swapped pairs.
  for (const auto& pair : pairs) {
    out.negatives.push_back(diff(WordPair{pair.target, pair.source}));
  }

  rng::Engine eng = rng::make_engine(seed);

  // Shuffled targets: (s_i, t_j), j != i, not a training pair.
  std::size_t shuffled_skipped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kSampleRetries && !placed; ++attempt) {
      const std::size_t j = rng::uniform_index(eng, n);
      if (j == i) continue;
      const WordPair cand{pairs[i].source, pairs[j].target};
      if (training_set.count({cand.source, cand.target})) continue;
      out.negatives.push_back(diff(cand));
      placed = true;
    }
    if (!placed) ++shuffled_skipped;
  }
  if (shuffled_skipped > 0) {
    out.warnings.push_back("shuffled-target negatives: skipped " +
                           std::to_string(shuffled_skipped) + " of " + std::to_string(n) +
                           " draws (no non-colliding target available)");
  }

  // Random vocabulary pairs.
  std::size_t random_skipped = 0;
  const std::size_t vocab = embedding.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kSampleRetries && !placed; ++attempt) {
      const std::size_t a = rng::uniform_index(eng, vocab);
      const std::size_t b = rng::uniform_index(eng, vocab);
      if (a == b) continue;
      const std::string& sa = embedding.words()[a];
      const std::string& tb = embedding.words()[b];
      if (training_set.count({sa, tb})) continue;
      out.negatives.push_back(embedding.vector_at(b) - embedding.vector_at(a));
      placed = true;
    }
    if (!placed) ++random_skipped;
  }
  if (random_skipped > 0) {
    out.warnings.push_back("random-pair negatives: skipped " +
                           std::to_string(random_skipped) + " of " + std::to_string(n) +
                           " draws");
  }

  if (out.negatives.empty()) throw DataError("no negatives could be generated");
  out.negative_weight =
      static_cast<double>(out.positives.size()) / static_cast<double>(out.negatives.size());
  return out;
}

double score_margin(const MarginClassifier& model, const WordEmbedding& embedding,
                    std::string_view source, std::string_view target) {
  const Eigen::VectorXd& ps = require_word(embedding, source);
  const Eigen::VectorXd& pt = require_word(embedding, target);
  if (ps.size() != model.weights.size()) {
    throw DataError("embedding dimension does not match the fitted model");
  }
  return model.score(pt - ps);
}

}  // namespace relind
