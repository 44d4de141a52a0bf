#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relind/dataset.hpp"
#include "relind/embedding.hpp"
#include "relind/metrics.hpp"

namespace relind {

enum class ModelKind {
  kTranslation,
  kRegression,
  kThreeCosAvg,
  kLRCos,
  kMargin,
};

ModelKind model_kind_from_name(std::string_view name);
std::string to_string(ModelKind kind);

// Where a labeled candidate pair came from.
enum class Provenance {
  kTestPositive,   // held-out pair of the relation itself
  kSwapped,        // (t, s) for a held-out (s, t)
  kRandomTail,     // (s, t') with t' sampled from the fold's targets
  kOtherRelation,  // a pair belonging to a different relation
  kRandomPair,     // two random distinct dataset words
};

std::string to_string(Provenance provenance);

struct LabeledPair {
  std::string source;
  std::string target;
  bool positive = false;
  Provenance provenance = Provenance::kTestPositive;
};

// Fold layout for one relation: a partition of pair indices. With 10 or
// more pairs, 10 folds of near-equal size; otherwise leave-one-out.
struct EvaluationPlan {
  std::vector<std::vector<std::size_t>> folds;
  double validation_fraction = 0.10;
  std::uint64_t seed = 0;
};

EvaluationPlan make_folds(std::size_t pair_count, std::uint64_t seed,
                          std::string_view relation_name);

// Builds the labeled candidate list for a test fold: the positives
// themselves, their swapped forms, two random tails per positive from the
// fold's targets, one pair from another relation per positive, and one
// random dataset word pair per positive. Colliding draws (pairs equal to
// a positive of the relation, or already emitted) retry a bounded number
// of times and are then skipped with a warning. Same seed, same list.
std::vector<LabeledPair> generate_negatives(std::span<const WordPair> test_fold,
                                            const std::vector<RelationDataset>& relations,
                                            std::string_view current_relation,
                                            std::span<const std::string> dataset_words,
                                            std::uint64_t seed,
                                            std::vector<std::string>* warnings = nullptr);

struct RelationReport {
  std::string name;
  std::size_t pairs_used = 0;
  std::size_t pairs_dropped_oov = 0;
  std::size_t fold_count = 0;
  ConfusionCounts confusion;  // pooled over folds at per-fold thresholds
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double map = 0.0;              // mean of per-fold average precision
  double ap_pooled = 0.0;        // AP of all folds' candidates ranked together
  double mean_threshold = 0.0;
  std::vector<double> fold_thresholds;
  std::vector<std::pair<std::string, long long>> candidate_counts;  // by provenance
  std::vector<std::string> warnings;
};

struct SkippedRelation {
  std::string name;
  std::string reason;
};

struct EvaluationReport {
  std::string embedding_id;
  std::string dataset_id;
  std::string model;
  std::uint64_t seed = 0;
  bool case_fold = false;
  std::vector<RelationReport> relations;
  std::vector<SkippedRelation> skipped;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double macro_map = 0.0;
  double macro_ap_pooled = 0.0;
};

struct EvalOptions {
  ModelKind model = ModelKind::kTranslation;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = hardware concurrency; results identical either way
  std::optional<int> k_override;
  std::string embedding_id = "in-memory";
  std::string dataset_id = "in-memory";

  // Test-only hooks. validation_hook observes every non-degenerate
  // validation set and the threshold chosen on it (serialized by a mutex).
  // scorer_override replaces model fitting and scoring entirely.
  std::function<void(const std::string& relation, std::size_t fold,
                     const std::vector<ScoredLabel>& scored, double threshold)>
      validation_hook;
  std::function<double(std::string_view source, std::string_view target)> scorer_override;
};

// Runs the full protocol: per relation, fold, fit, pick a threshold on
// held-out validation positives plus generated negatives, score the test
// candidates, and aggregate. Relations may be evaluated concurrently; the
// report is identical for a given seed regardless of thread count.
EvaluationReport evaluate(const WordEmbedding& embedding,
                          const std::vector<RelationDataset>& relations,
                          const EvalOptions& options);

// Deterministic serialization: same report, same bytes.
std::string report_to_json(const EvaluationReport& report);
void write_report_json(const EvaluationReport& report, const std::string& path);
std::string report_to_tsv(const EvaluationReport& report);
void write_report_tsv(const EvaluationReport& report, const std::string& path);
void print_macro_table(const EvaluationReport& report, std::ostream& out);

}  // namespace relind
