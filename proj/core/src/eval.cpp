#include "relind/eval.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "relind/baselines.hpp"
#include "relind/errors.hpp"
#include "relind/relation_models.hpp"
#include "relind/rng.hpp"

namespace relind {

ModelKind model_kind_from_name(std::string_view name) {
  if (name == "translation") return ModelKind::kTranslation;
  if (name == "regression") return ModelKind::kRegression;
  if (name == "3cosavg") return ModelKind::kThreeCosAvg;
  if (name == "lrcos") return ModelKind::kLRCos;
  if (name == "margin") return ModelKind::kMargin;
  throw ConfigError("unknown model kind '" + std::string(name) +
                    "' (expected translation, regression, 3cosavg, lrcos, or margin)");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTranslation: return "translation";
    case ModelKind::kRegression: return "regression";
    case ModelKind::kThreeCosAvg: return "3cosavg";
    case ModelKind::kLRCos: return "lrcos";
    case ModelKind::kMargin: return "margin";
  }
  return "?";
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kTestPositive: return "test-positive";
    case Provenance::kSwapped: return "swapped";
    case Provenance::kRandomTail: return "random-tail";
    case Provenance::kOtherRelation: return "other-relation";
    case Provenance::kRandomPair: return "random-pair";
  }
  return "?";
}

EvaluationPlan make_folds(std::size_t pair_count, std::uint64_t seed,
                          std::string_view relation_name) {
  EvaluationPlan plan;
  plan.seed = seed;
  std::vector<std::size_t> order(pair_count);
  for (std::size_t i = 0; i < pair_count; ++i) order[i] = i;
  rng::Engine eng = rng::derive(seed, relation_name, 0, "folds");
  rng::shuffle(order, eng);

  if (pair_count >= 10) {
    plan.folds.assign(10, {});
    for (std::size_t i = 0; i < pair_count; ++i) {
      plan.folds[i % 10].push_back(order[i]);
    }
  } else {
    plan.folds.reserve(pair_count);
    for (std::size_t i = 0; i < pair_count; ++i) plan.folds.push_back({order[i]});
  }
  return plan;
}

namespace {

constexpr int kSampleRetries = 64;

using PairKey = std::pair<std::string, std::string>;

PairKey key_of(const WordPair& p) { return {p.source, p.target}; }

}  // namespace

std::vector<LabeledPair> generate_negatives(std::span<const WordPair> test_fold,
                                            const std::vector<RelationDataset>& relations,
                                            std::string_view current_relation,
                                            std::span<const std::string> dataset_words,
                                            std::uint64_t seed,
                                            std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& msg) {
    if (warnings != nullptr) warnings->push_back(msg);
  };

  // Every pair of the current relation counts as a positive no matter
  // which fold it sits in; generated negatives must avoid them all.
  std::set<PairKey> positives;
  bool found_current = false;
  for (const auto& rel : relations) {
    if (rel.name == current_relation) {
      found_current = true;
      for (const auto& p : rel.pairs) positives.insert(key_of(p));
    }
  }
  if (!found_current) {
    for (const auto& p : test_fold) positives.insert(key_of(p));
  }

  std::vector<LabeledPair> out;
  std::set<PairKey> emitted;
  auto emit = [&](const WordPair& p, bool positive, Provenance prov) {
    out.push_back(LabeledPair{p.source, p.target, positive, prov});
    emitted.insert(key_of(p));
  };

  for (const auto& p : test_fold) emit(p, true, Provenance::kTestPositive);

  rng::Engine eng = rng::make_engine(seed);

  // Swapped pairs.
  for (const auto& p : test_fold) {
    const WordPair cand{p.target, p.source};
    if (positives.count(key_of(cand)) || emitted.count(key_of(cand))) {
      warn("swapped negative (" + cand.source + ", " + cand.target +
           ") collides with a positive; skipped");
      continue;
    }
    emit(cand, false, Provenance::kSwapped);
  }

  // Two random tails per positive, drawn from the fold's target words.
  std::vector<std::string> fold_targets;
  fold_targets.reserve(test_fold.size());
  for (const auto& p : test_fold) fold_targets.push_back(p.target);
  for (const auto& p : test_fold) {
    std::vector<std::string> eligible;
    for (const auto& t : fold_targets) {
      const PairKey k{p.source, t};
      if (positives.count(k) || emitted.count(k)) continue;
      if (eligible.end() == std::find(eligible.begin(), eligible.end(), t)) {
        eligible.push_back(t);
      }
    }
    for (int want = 0; want < 2 && !eligible.empty(); ++want) {
      const std::size_t pick = rng::uniform_index(eng, eligible.size());
      const WordPair cand{p.source, eligible[pick]};
      eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
      if (emitted.count(key_of(cand))) continue;  // emitted for an earlier source
      emit(cand, false, Provenance::kRandomTail);
    }
  }

  // One pair from another relation per positive.
  std::vector<const WordPair*> other_pool;
  for (const auto& rel : relations) {
    if (rel.name == current_relation) continue;
    for (const auto& p : rel.pairs) other_pool.push_back(&p);
  }
  if (other_pool.empty()) {
    warn("no other relations available; other-relation negatives skipped");
  } else {
    for (std::size_t i = 0; i < test_fold.size(); ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kSampleRetries && !placed; ++attempt) {
        const WordPair& cand = *other_pool[rng::uniform_index(eng, other_pool.size())];
        if (positives.count(key_of(cand)) || emitted.count(key_of(cand))) continue;
        emit(cand, false, Provenance::kOtherRelation);
        placed = true;
      }
      if (!placed) {
        warn("other-relation negative draw exhausted retries; skipped");
      }
    }
  }

  // One random word pair per positive.
  if (dataset_words.size() < 2) {
    warn("fewer than 2 dataset words available; random-pair negatives skipped");
  } else {
    for (std::size_t i = 0; i < test_fold.size(); ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kSampleRetries && !placed; ++attempt) {
        const std::string& s = dataset_words[rng::uniform_index(eng, dataset_words.size())];
        const std::string& t = dataset_words[rng::uniform_index(eng, dataset_words.size())];
        if (s == t) continue;
        const PairKey k{s, t};
        if (positives.count(k) || emitted.count(k)) continue;
        emit(WordPair{s, t}, false, Provenance::kRandomPair);
        placed = true;
      }
      if (!placed) {
        warn("random-pair negative draw exhausted retries; skipped");
      }
    }
  }

  return out;
}

namespace {

struct UsableRelation {
  std::string name;
  std::vector<WordPair> pairs;
  std::size_t dropped_oov = 0;
  std::vector<std::string> load_warnings;
};

int min_fit_pairs(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTranslation: return 2;
    case ModelKind::kRegression: return 2;  // < 4 falls back to translation
    case ModelKind::kLRCos: return 2;
    case ModelKind::kThreeCosAvg: return 1;
    case ModelKind::kMargin: return 1;
  }
  return 2;
}

struct FoldScorer {
  std::function<double(const WordPair&)> score;
  std::vector<std::string> warnings;
};

// Fits the requested model on the fitting pairs. The margin kind is
// handled separately because its C grid needs validation scores.
FoldScorer fit_fold_scorer(ModelKind kind, const WordEmbedding& embedding,
                           const std::vector<WordPair>& fit_pairs, std::uint64_t fit_seed,
                           std::optional<int> k_override) {
  FoldScorer out;
  switch (kind) {
    case ModelKind::kTranslation: {
      auto model = std::make_shared<TranslationRelationModel>(
          fit_translation(embedding, fit_pairs, fit_seed));
      out.score = [model, &embedding](const WordPair& p) {
        return score_translation(*model, embedding, p.source, p.target).total;
      };
      break;
    }
    case ModelKind::kRegression: {
      if (fit_pairs.size() >= 4) {
        auto model = std::make_shared<RegressionRelationModel>(
            fit_regression(embedding, fit_pairs, k_override));
        out.score = [model, &embedding](const WordPair& p) {
          return score_regression(*model, embedding, p.source, p.target).total;
        };
      } else {
        out.warnings.push_back("fitting set has " + std::to_string(fit_pairs.size()) +
                               " pairs, below the regression minimum of 4; fold uses the "
                               "translation model");
        auto model = std::make_shared<TranslationRelationModel>(
            fit_translation(embedding, fit_pairs, fit_seed));
        out.score = [model, &embedding](const WordPair& p) {
          return score_translation(*model, embedding, p.source, p.target).total;
        };
      }
      break;
    }
    case ModelKind::kThreeCosAvg: {
      auto model = std::make_shared<ThreeCosAvgModel>(
          fit_three_cos_avg(embedding, fit_pairs));
      out.score = [model, &embedding](const WordPair& p) {
        return score_three_cos_avg(*model, embedding, p.source, p.target);
      };
      break;
    }
    case ModelKind::kLRCos: {
      auto model = std::make_shared<LRCosModel>(fit_lrcos(embedding, fit_pairs));
      out.score = [model, &embedding](const WordPair& p) {
        return score_lrcos(*model, embedding, p.source, p.target);
      };
      break;
    }
    case ModelKind::kMargin:
      throw Error("margin scorers are built inline");  // unreachable by construction
  }
  return out;
}

struct RelationOutcome {
  bool skipped = false;
  std::string skip_reason;
  RelationReport report;
};

struct EvalContext {
  const WordEmbedding& embedding;
  const std::vector<RelationDataset>& usable;
  const std::vector<std::string>& dataset_words;
  const EvalOptions& options;
  std::mutex hook_mutex;
};

RelationOutcome evaluate_relation(EvalContext& ctx, const UsableRelation& relation) {
  const EvalOptions& opt = ctx.options;
  const WordEmbedding& embedding = ctx.embedding;
  RelationOutcome outcome;
  RelationReport& report = outcome.report;
  report.name = relation.name;
  report.pairs_used = relation.pairs.size();
  report.pairs_dropped_oov = relation.dropped_oov;
  report.warnings = relation.load_warnings;

  const std::size_t n = relation.pairs.size();
  const EvaluationPlan plan = make_folds(n, opt.seed, relation.name);

  const bool override_scoring = static_cast<bool>(opt.scorer_override);
  const int min_fit = override_scoring ? 0 : min_fit_pairs(opt.model);

  std::vector<double> fold_aps;
  std::vector<ScoredLabel> pooled;
  std::array<long long, 5> prov_counts{};
  std::size_t folds_run = 0;

  for (std::size_t fold_idx = 0; fold_idx < plan.folds.size(); ++fold_idx) {
    const auto& fold = plan.folds[fold_idx];
    std::vector<char> in_test(n, 0);
    for (std::size_t idx : fold) in_test[idx] = 1;

    std::vector<WordPair> test_pairs, train_pairs;
    for (std::size_t i = 0; i < n; ++i) {
      (in_test[i] ? test_pairs : train_pairs).push_back(relation.pairs[i]);
    }

    // Partition sanity: a pair on both sides is a fold construction bug.
    // The same words in reverse order can occur legitimately in symmetric
    // relations, so that case only warns.
    {
      std::set<PairKey> train_keys;
      for (const auto& p : train_pairs) train_keys.insert(key_of(p));
      for (const auto& p : test_pairs) {
        if (train_keys.count(key_of(p))) {
          throw Error("fold leak: pair (" + p.source + ", " + p.target +
                      ") is in both test and training sets");
        }
        if (train_keys.count({p.target, p.source})) {
          report.warnings.push_back("relation contains (" + p.source + ", " + p.target +
                                    ") and its reverse; reversed form stays in training");
        }
      }
    }

    if (train_pairs.size() < static_cast<std::size_t>(std::max(min_fit, 1)) &&
        !override_scoring) {
      report.warnings.push_back("fold " + std::to_string(fold_idx) +
                                " skipped: training side has " +
                                std::to_string(train_pairs.size()) +
                                " pairs, below the model minimum");
      continue;
    }

    // Validation positives come out of the training side, capped so the
    // fitting set keeps the model's minimum.
    const std::size_t v_raw = static_cast<std::size_t>(
        std::ceil(plan.validation_fraction * static_cast<double>(train_pairs.size())));
    const std::size_t v_cap =
        train_pairs.size() > static_cast<std::size_t>(min_fit)
            ? train_pairs.size() - static_cast<std::size_t>(min_fit)
            : 0;
    const std::size_t v = std::min(v_raw, v_cap);

    std::vector<WordPair> validation_pairs, fit_pairs;
    {
      rng::Engine eng = rng::derive(opt.seed, relation.name, fold_idx, "validation");
      const auto picks =
          rng::sample_without_replacement(train_pairs.size(), v, eng);
      std::vector<char> in_validation(train_pairs.size(), 0);
      for (std::size_t idx : picks) in_validation[idx] = 1;
      for (std::size_t i = 0; i < train_pairs.size(); ++i) {
        (in_validation[i] ? validation_pairs : fit_pairs).push_back(train_pairs[i]);
      }
    }

    try {
      FoldScorer scorer;
      double threshold = 0.0;

      if (override_scoring) {
        scorer.score = [&opt](const WordPair& p) {
          return opt.scorer_override(p.source, p.target);
        };
      }

      auto score_labeled = [&](const std::vector<LabeledPair>& labeled) {
        std::vector<ScoredLabel> scored(labeled.size());
        for (std::size_t i = 0; i < labeled.size(); ++i) {
          scored[i].score = scorer.score(WordPair{labeled[i].source, labeled[i].target});
          scored[i].positive = labeled[i].positive;
        }
        return scored;
      };

      std::vector<LabeledPair> validation_candidates;
      if (!validation_pairs.empty()) {
        validation_candidates = generate_negatives(
            validation_pairs, ctx.usable, relation.name, ctx.dataset_words,
            rng::derive(opt.seed, relation.name, fold_idx, "validation-negatives")(),
            &report.warnings);
      }
      bool have_validation = false;
      for (const auto& c : validation_candidates) have_validation |= !c.positive;

      if (opt.model == ModelKind::kMargin && !override_scoring) {
        // C is tuned on validation F1; without validation it defaults to 1.
        const MarginTrainingSet training = assemble_margin_training(
            embedding, fit_pairs,
            rng::derive(opt.seed, relation.name, fold_idx, "margin-training")());
        for (const auto& w : training.warnings) report.warnings.push_back(w);

        auto build = [&](double c_value) {
          auto model = std::make_shared<MarginClassifier>(train_margin_classifier(
              training.positives, training.negatives, c_value, 1.0,
              training.negative_weight));
          return [model, &embedding](const WordPair& p) {
            return score_margin(*model, embedding, p.source, p.target);
          };
        };

        if (have_validation) {
          double best_f1 = -1.0;
          std::function<double(const WordPair&)> best_scorer;
          for (double c_value : margin_c_grid()) {
            auto candidate = build(c_value);
            scorer.score = candidate;
            const auto scored = score_labeled(validation_candidates);
            const double f = best_f1_threshold(scored).f1;
            if (f > best_f1) {  // ties keep the smaller C
              best_f1 = f;
              best_scorer = candidate;
            }
          }
          scorer.score = best_scorer;
        } else {
          report.warnings.push_back("fold " + std::to_string(fold_idx) +
                                    ": no validation data; margin C defaulted to 1");
          scorer.score = build(1.0);
        }
      } else if (!override_scoring) {
        FoldScorer fitted = fit_fold_scorer(
            opt.model, embedding, fit_pairs,
            rng::derive(opt.seed, relation.name, fold_idx, "fit")(), opt.k_override);
        for (auto& w : fitted.warnings) {
          report.warnings.push_back("fold " + std::to_string(fold_idx) + ": " + w);
        }
        scorer.score = std::move(fitted.score);
      }

      if (have_validation) {
        const auto scored = score_labeled(validation_candidates);
        bool has_pos = false, has_neg = false;
        for (const auto& s : scored) (s.positive ? has_pos : has_neg) = true;
        if (has_pos && has_neg) {
          threshold = select_threshold(scored);
          if (opt.validation_hook) {
            std::lock_guard<std::mutex> lock(ctx.hook_mutex);
            opt.validation_hook(relation.name, fold_idx, scored, threshold);
          }
        } else {
          have_validation = false;
        }
      }

      if (!have_validation) {
        // Degenerate path: no usable validation set. The cut falls halfway
        // between the mean score of the fitting positives and the mean
        // score of negatives generated from them.
        const auto train_candidates = generate_negatives(
            fit_pairs, ctx.usable, relation.name, ctx.dataset_words,
            rng::derive(opt.seed, relation.name, fold_idx, "train-negatives")(),
            &report.warnings);
        double pos_sum = 0.0, neg_sum = 0.0;
        std::size_t pos_n = 0, neg_n = 0;
        for (const auto& c : train_candidates) {
          const double s = scorer.score(WordPair{c.source, c.target});
          if (c.positive) {
            pos_sum += s;
            ++pos_n;
          } else {
            neg_sum += s;
            ++neg_n;
          }
        }
        if (pos_n == 0 || neg_n == 0) {
          throw DataError("no usable threshold data on the training side");
        }
        threshold = 0.5 * (pos_sum / static_cast<double>(pos_n) +
                           neg_sum / static_cast<double>(neg_n));
        report.warnings.push_back("fold " + std::to_string(fold_idx) +
                                  ": threshold chosen on training-side scores (no "
                                  "validation data)");
      }

      // Score the held-out candidates.
      const auto test_candidates = generate_negatives(
          test_pairs, ctx.usable, relation.name, ctx.dataset_words,
          rng::derive(opt.seed, relation.name, fold_idx, "test-negatives")(),
          &report.warnings);
      auto scored = score_labeled(test_candidates);
      for (const auto& c : test_candidates) {
        prov_counts[static_cast<std::size_t>(c.provenance)] += 1;
      }

      const ConfusionCounts fold_confusion = count_at_threshold(scored, threshold);
      report.confusion.tp += fold_confusion.tp;
      report.confusion.fp += fold_confusion.fp;
      report.confusion.fn += fold_confusion.fn;
      report.confusion.tn += fold_confusion.tn;

      // Rank with ties broken by a seeded shuffle ahead of a stable sort.
      {
        rng::Engine eng = rng::derive(opt.seed, relation.name, fold_idx, "rank-shuffle");
        rng::shuffle(scored, eng);
      }
      std::stable_sort(scored.begin(), scored.end(),
                       [](const ScoredLabel& a, const ScoredLabel& b) {
                         return a.score > b.score;
                       });
      std::vector<int> labels(scored.size());
      for (std::size_t i = 0; i < scored.size(); ++i) labels[i] = scored[i].positive ? 1 : 0;
      fold_aps.push_back(average_precision(labels));
      for (const auto& s : scored) pooled.push_back(s);

      report.fold_thresholds.push_back(threshold);
      ++folds_run;
    } catch (const DataError& e) {
      report.warnings.push_back("fold " + std::to_string(fold_idx) +
                                " skipped: " + e.what());
    }
  }

  if (folds_run == 0) {
    outcome.skipped = true;
    outcome.skip_reason = "no fold could be evaluated";
    return outcome;
  }

  report.fold_count = folds_run;
  report.precision = precision(report.confusion);
  report.recall = recall(report.confusion);
  report.f1 = f1(report.confusion);

  double ap_sum = 0.0;
  for (double ap : fold_aps) ap_sum += ap;
  report.map = ap_sum / static_cast<double>(fold_aps.size());

  {
    rng::Engine eng = rng::derive(opt.seed, relation.name, 0, "pooled-rank-shuffle");
    rng::shuffle(pooled, eng);
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const ScoredLabel& a, const ScoredLabel& b) {
                       return a.score > b.score;
                     });
    std::vector<int> labels(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) labels[i] = pooled[i].positive ? 1 : 0;
    report.ap_pooled = average_precision(labels);
  }

  double threshold_sum = 0.0;
  for (double t : report.fold_thresholds) threshold_sum += t;
  report.mean_threshold = threshold_sum / static_cast<double>(report.fold_thresholds.size());

  static constexpr std::array<Provenance, 5> kProvenanceOrder = {
      Provenance::kTestPositive, Provenance::kSwapped, Provenance::kRandomTail,
      Provenance::kOtherRelation, Provenance::kRandomPair};
  for (Provenance p : kProvenanceOrder) {
    report.candidate_counts.emplace_back(to_string(p),
                                         prov_counts[static_cast<std::size_t>(p)]);
  }
  return outcome;
}

}  // namespace

EvaluationReport evaluate(const WordEmbedding& embedding,
                          const std::vector<RelationDataset>& relations,
                          const EvalOptions& options) {
  if (relations.empty()) throw DataError("no relations to evaluate");

  // Resolve pairs against the vocabulary once. Words from dropped pairs
  // still join the sampling pool when they are themselves in vocabulary.
  std::vector<UsableRelation> usable(relations.size());
  std::vector<RelationDataset> usable_datasets(relations.size());
  std::vector<std::string> dataset_words;
  std::set<std::string> seen_words;
  for (std::size_t r = 0; r < relations.size(); ++r) {
    usable[r].name = relations[r].name;
    usable[r].load_warnings = relations[r].warnings;
    usable_datasets[r].name = relations[r].name;
    for (const auto& p : relations[r].pairs) {
      const bool s_in = embedding.contains(p.source);
      const bool t_in = embedding.contains(p.target);
      if (s_in && t_in) {
        usable[r].pairs.push_back(p);
        usable_datasets[r].pairs.push_back(p);
      } else {
        ++usable[r].dropped_oov;
      }
      if (s_in && seen_words.insert(p.source).second) dataset_words.push_back(p.source);
      if (t_in && seen_words.insert(p.target).second) dataset_words.push_back(p.target);
    }
    if (usable[r].dropped_oov > 0) {
      usable[r].load_warnings.push_back(
          "dropped " + std::to_string(usable[r].dropped_oov) +
          " pair(s) with out-of-vocabulary words");
    }
  }

  EvalContext ctx{embedding, usable_datasets, dataset_words, options, {}};

  std::vector<RelationOutcome> outcomes(relations.size());
  std::vector<char> pre_skipped(relations.size(), 0);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (usable[r].pairs.size() < 2) {
      pre_skipped[r] = 1;
      outcomes[r].skipped = true;
      outcomes[r].skip_reason = "fewer than 2 usable pairs (" +
                                std::to_string(usable[r].pairs.size()) + " usable, " +
                                std::to_string(usable[r].dropped_oov) + " dropped)";
    }
  }

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(relations.size()));
  threads = std::max(1u, threads);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= relations.size()) return;
      if (pre_skipped[r]) continue;
      try {
        outcomes[r] = evaluate_relation(ctx, usable[r]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EvaluationReport report;
  report.embedding_id = options.embedding_id;
  report.dataset_id = options.dataset_id;
  report.model = to_string(options.model);
  report.seed = options.seed;
  report.case_fold = embedding.case_fold();

  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (outcomes[r].skipped) {
      report.skipped.push_back(SkippedRelation{usable[r].name, outcomes[r].skip_reason});
    } else {
      report.relations.push_back(std::move(outcomes[r].report));
    }
  }

  if (!report.relations.empty()) {
    const double k = static_cast<double>(report.relations.size());
    for (const auto& rel : report.relations) {
      report.macro_precision += rel.precision;
      report.macro_recall += rel.recall;
      report.macro_f1 += rel.f1;
      report.macro_map += rel.map;
      report.macro_ap_pooled += rel.ap_pooled;
    }
    report.macro_precision /= k;
    report.macro_recall /= k;
    report.macro_f1 /= k;
    report.macro_map /= k;
    report.macro_ap_pooled /= k;
  }
  return report;
}

}  // namespace relind
