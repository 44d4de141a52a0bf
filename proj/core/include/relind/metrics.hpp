#pragma once

#include <span>
#include <vector>

namespace relind {

struct ConfusionCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;
};

// All three return 0 when their denominator is 0.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
double f1(const ConfusionCounts& c);

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

// Counts predictions under the rule "positive iff score > threshold".
ConfusionCounts count_at_threshold(std::span<const ScoredLabel> scored, double threshold);

// Realizable decision cuts for a score set: midpoints between adjacent
// distinct sorted scores, plus one cut below the minimum and one above the
// maximum (offset by 1e-9 relative to magnitude). Ascending.
std::vector<double> candidate_thresholds(std::span<const ScoredLabel> scored);

// Picks the threshold whose "score > t" rule maximizes F1; ties resolve
// to the lowest threshold. Requires at least one positive and one
// negative label.
double select_threshold(std::span<const ScoredLabel> scored);

// Best F1 over all candidate thresholds, with the threshold that attains
// it (same tie rule).
struct ThresholdSearchResult {
  double threshold = 0.0;
  double f1 = 0.0;
};
ThresholdSearchResult best_f1_threshold(std::span<const ScoredLabel> scored);

// Average precision of a ranking given labels in rank order (best first):
// mean over positive positions r (1-based) of precision@r. Requires at
// least one positive.
double average_precision(std::span<const int> ranked_labels);

}  // namespace relind
