#include "relind/relation_models.hpp"

#include <algorithm>
#include <string>

#include "relind/errors.hpp"
#include "relind/rng.hpp"

namespace relind {

namespace {

// Resolves the pair words against the vocabulary, collecting every
// missing word into one error so callers see the full list at once.
struct ResolvedPairs {
  Eigen::MatrixXd sources;  // n x m
  Eigen::MatrixXd targets;  // n x m
};

ResolvedPairs resolve_pairs(const WordEmbedding& embedding,
                            std::span<const WordPair> pairs) {
  std::vector<std::string> missing;
  for (const auto& pair : pairs) {
    if (!embedding.contains(pair.source)) missing.push_back(pair.source);
    if (!embedding.contains(pair.target)) missing.push_back(pair.target);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string msg = "words missing from the vocabulary:";
    for (const auto& w : missing) msg += " '" + w + "'";
    throw DataError(msg);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
  const Eigen::Index m = embedding.dimension();
  ResolvedPairs out;
  out.sources.resize(n, m);
  out.targets.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.sources.row(i) = embedding.lookup(pairs[i].source)->transpose();
    out.targets.row(i) = embedding.lookup(pairs[i].target)->transpose();
  }
  return out;
}

std::vector<UnivariatePredictive> fit_columns(const Eigen::MatrixXd& data) {
  std::vector<UnivariatePredictive> out(static_cast<std::size_t>(data.cols()));
  std::vector<double> column(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      column[static_cast<std::size_t>(i)] = data(i, j);
    }
    out[static_cast<std::size_t>(j)] = fit_univariate_predictive(column);
  }
  return out;
}

const Eigen::VectorXd& require_word(const WordEmbedding& embedding,
                                    std::string_view word) {
  const Eigen::VectorXd* v = embedding.lookup(word);
  if (v == nullptr) {
    throw DataError("words missing from the vocabulary: '" + std::string(word) + "'");
  }
  return *v;
}

}  // namespace

TranslationRelationModel fit_translation(const WordEmbedding& embedding,
                                         std::span<const WordPair> pairs,
                                         std::uint64_t seed) {
  const std::size_t n = pairs.size();
  if (n < 2) {
    throw DataError("translation model needs at least 2 pairs, got " + std::to_string(n));
  }
  const auto resolved = resolve_pairs(embedding, pairs);
  const Eigen::MatrixXd diffs = resolved.targets - resolved.sources;

  TranslationRelationModel model;
  model.dimension = embedding.dimension();
  model.pair_count = static_cast<int>(n);
  model.seed = seed;
  model.source_predictive = fit_columns(resolved.sources);
  model.target_predictive = fit_columns(resolved.targets);
  model.diff_predictive = fit_columns(diffs);

  // Differences of mismatched pairs: n draws of (s_l, t_k) with l != k.
  rng::Engine eng = rng::make_engine(seed);
  Eigen::MatrixXd cross(static_cast<Eigen::Index>(n), model.dimension);
  for (std::size_t row = 0; row < n; ++row) {
    std::size_t l = 0, k = 0;
    do {
      l = rng::uniform_index(eng, n);
      k = rng::uniform_index(eng, n);
    } while (l == k);
    cross.row(static_cast<Eigen::Index>(row)) =
        resolved.targets.row(static_cast<Eigen::Index>(k)) -
        resolved.sources.row(static_cast<Eigen::Index>(l));
  }
  model.cross_predictive = fit_columns(cross);
  // Only spread should separate matched from mismatched differences.
  for (int j = 0; j < model.dimension; ++j) {
    model.cross_predictive[static_cast<std::size_t>(j)].location =
        model.diff_predictive[static_cast<std::size_t>(j)].location;
  }
  return model;
}

ScoreBreakdown score_translation(const TranslationRelationModel& model,
                                 const WordEmbedding& embedding, std::string_view source,
                                 std::string_view target) {
  const Eigen::VectorXd& ps = require_word(embedding, source);
  const Eigen::VectorXd& pt = require_word(embedding, target);
  if (ps.size() != model.dimension) {
    throw DataError("embedding dimension does not match the fitted model");
  }

  double source_fit = 0.0, target_fit = 0.0, diff_fit = 0.0, cross_fit = 0.0;
  for (int j = 0; j < model.dimension; ++j) {
    const auto js = static_cast<std::size_t>(j);
    const double d = pt[j] - ps[j];
    source_fit += model.source_predictive[js].logpdf(ps[j]);
    target_fit += model.target_predictive[js].logpdf(pt[j]);
    diff_fit += model.diff_predictive[js].logpdf(d);
    cross_fit += model.cross_predictive[js].logpdf(d);
  }

  ScoreBreakdown out;
  out.source_type_lbf = source_fit - embedding.background_logpdf(ps);
  out.target_type_lbf = target_fit - embedding.background_logpdf(pt);
  out.relation_lbf = diff_fit - cross_fit;
  out.total = out.source_type_lbf + out.target_type_lbf + out.relation_lbf;
  return out;
}

RegressionRelationModel fit_regression(const WordEmbedding& embedding,
                                       std::span<const WordPair> pairs,
                                       std::optional<int> k_override) {
  const std::size_t n = pairs.size();
  if (n < 4) {
    throw DataError("regression model needs at least 4 pairs, got " + std::to_string(n));
  }
  const auto resolved = resolve_pairs(embedding, pairs);
  const int m = embedding.dimension();

  const int k_cap = std::min<int>(m, static_cast<int>(n) - 2);
  int k = k_override.value_or(std::max(1, (static_cast<int>(n) - 1) / 2));
  k = std::clamp(k, 1, k_cap);

  RegressionRelationModel model;
  model.dimension = m;
  model.pair_count = static_cast<int>(n);
  model.k = k;
  model.source_predictive = fit_columns(resolved.sources);
  model.basis = fit_low_rank_basis(resolved.sources, k);
  model.coordinate_models.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    model.coordinate_models.push_back(
        fit_bayes_regression(model.basis, resolved.targets.col(j)));
  }
  return model;
}

ScoreBreakdown score_regression(const RegressionRelationModel& model,
                                const WordEmbedding& embedding, std::string_view source,
                                std::string_view target) {
  const Eigen::VectorXd& ps = require_word(embedding, source);
  const Eigen::VectorXd& pt = require_word(embedding, target);
  if (ps.size() != model.dimension) {
    throw DataError("embedding dimension does not match the fitted model");
  }

  double source_fit = 0.0;
  for (int j = 0; j < model.dimension; ++j) {
    source_fit += model.source_predictive[static_cast<std::size_t>(j)].logpdf(ps[j]);
  }

  // The leverage term is shared by every coordinate model (same basis,
  // same gram inverse), so compute it once.
  const Eigen::VectorXd q = project(model.basis, ps);
  const auto& first = model.coordinate_models.front();
  const double leverage = std::max(q.dot(first.gram_inverse * q), 0.0);

  double target_fit = 0.0;
  for (int j = 0; j < model.dimension; ++j) {
    const auto& cm = model.coordinate_models[static_cast<std::size_t>(j)];
    const double scale2 = cm.sigma0_2 * (1.0 + leverage);
    target_fit += student_t_logpdf(pt[j], cm.df, cm.coefficients.dot(q), scale2);
  }

  ScoreBreakdown out;
  out.source_type_lbf = source_fit - embedding.background_logpdf(ps);
  out.target_type_lbf = 0.0;  // cancels in this model
  out.relation_lbf = target_fit - embedding.background_logpdf(pt);
  out.total = out.source_type_lbf + out.target_type_lbf + out.relation_lbf;
  return out;
}

}  // namespace relind
