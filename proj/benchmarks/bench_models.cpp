#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "relind/baselines.hpp"
#include "relind/relation_models.hpp"

namespace {

const benchsup::BenchData& data300() {
  static const auto data = benchsup::make_bench_data(300, 2000, 1, 50, 3);
  return data;
}

void BM_FitTranslation(benchmark::State& state) {
  const auto& d = data300();
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::fit_translation(d.embedding, d.relations[0].pairs, 42));
  }
}
BENCHMARK(BM_FitTranslation);

void BM_ScoreTranslation(benchmark::State& state) {
  const auto& d = data300();
  const auto model = relind::fit_translation(d.embedding, d.relations[0].pairs, 42);
  const auto& pair = d.relations[0].pairs.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        relind::score_translation(model, d.embedding, pair.source, pair.target));
  }
}
BENCHMARK(BM_ScoreTranslation);

void BM_FitRegression(benchmark::State& state) {
  const auto& d = data300();
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::fit_regression(d.embedding, d.relations[0].pairs));
  }
}
BENCHMARK(BM_FitRegression);

void BM_ScoreRegression(benchmark::State& state) {
  const auto& d = data300();
  const auto model = relind::fit_regression(d.embedding, d.relations[0].pairs);
  const auto& pair = d.relations[0].pairs.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        relind::score_regression(model, d.embedding, pair.source, pair.target));
  }
}
BENCHMARK(BM_ScoreRegression);

void BM_TrainMarginClassifier(benchmark::State& state) {
  const auto& d = data300();
  const auto training =
      relind::assemble_margin_training(d.embedding, d.relations[0].pairs, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::train_margin_classifier(
        training.positives, training.negatives, 1.0, 1.0, training.negative_weight));
  }
}
BENCHMARK(BM_TrainMarginClassifier);

}  // namespace
