#include "relind/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "relind/errors.hpp"

namespace relind {

double precision(const ConfusionCounts& c) {
  const long long denom = c.tp + c.fp;
  return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const ConfusionCounts& c) {
  const long long denom = c.tp + c.fn;
  return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1(const ConfusionCounts& c) {
  const double p = precision(c);
  const double r = recall(c);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

ConfusionCounts count_at_threshold(std::span<const ScoredLabel> scored, double threshold) {
  ConfusionCounts out;
  for (const auto& s : scored) {
    const bool predicted = s.score > threshold;
    if (predicted && s.positive) ++out.tp;
    else if (predicted && !s.positive) ++out.fp;
    else if (!predicted && s.positive) ++out.fn;
    else ++out.tn;
  }
  return out;
}

std::vector<double> candidate_thresholds(std::span<const ScoredLabel> scored) {
  std::vector<double> values;
  values.reserve(scored.size());
  for (const auto& s : scored) values.push_back(s.score);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return {};

  // Relative offsets keep the extreme cuts meaningful at any score scale;
  // the absolute fallback covers scores at exactly zero.
  auto below = [](double v) { return v - std::max(1e-9 * std::abs(v), 1e-9); };
  auto above = [](double v) { return v + std::max(1e-9 * std::abs(v), 1e-9); };

  std::vector<double> out;
  out.reserve(values.size() + 1);
  out.push_back(below(values.front()));
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    out.push_back(0.5 * (values[i] + values[i + 1]));
  }
  out.push_back(above(values.back()));
  return out;
}

ThresholdSearchResult best_f1_threshold(std::span<const ScoredLabel> scored) {
  bool has_pos = false, has_neg = false;
  for (const auto& s : scored) (s.positive ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    throw DataError("threshold selection needs both a positive and a negative label");
  }
  ThresholdSearchResult best;
  best.f1 = -1.0;
  for (double t : candidate_thresholds(scored)) {
    const double f = f1(count_at_threshold(scored, t));
    if (f > best.f1) {  // strict: ties keep the lowest threshold
      best.f1 = f;
      best.threshold = t;
    }
  }
  return best;
}

double select_threshold(std::span<const ScoredLabel> scored) {
  return best_f1_threshold(scored).threshold;
}

double average_precision(std::span<const int> ranked_labels) {
  long long positives = 0;
  for (int label : ranked_labels) positives += label != 0 ? 1 : 0;
  if (positives == 0) throw DataError("average precision needs at least one positive");
  double sum = 0.0;
  long long hits = 0;
  for (std::size_t r = 0; r < ranked_labels.size(); ++r) {
    if (ranked_labels[r] != 0) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return sum / static_cast<double>(positives);
}

}  // namespace relind
