#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "relind/eval.hpp"

namespace {

const benchsup::BenchData& data50() {
  static const auto data = benchsup::make_bench_data(50, 300, 4, 20, 5);
  return data;
}

void run_eval(benchmark::State& state, relind::ModelKind kind) {
  const auto& d = data50();
  relind::EvalOptions options;
  options.model = kind;
  options.seed = 42;
  options.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::evaluate(d.embedding, d.relations, options));
  }
}

void BM_EvaluateTranslation(benchmark::State& state) {
  run_eval(state, relind::ModelKind::kTranslation);
}
BENCHMARK(BM_EvaluateTranslation)->Unit(benchmark::kMillisecond);

void BM_EvaluateThreeCosAvg(benchmark::State& state) {
  run_eval(state, relind::ModelKind::kThreeCosAvg);
}
BENCHMARK(BM_EvaluateThreeCosAvg)->Unit(benchmark::kMillisecond);

void BM_EvaluateRegression(benchmark::State& state) {
  run_eval(state, relind::ModelKind::kRegression);
}
BENCHMARK(BM_EvaluateRegression)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
