#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <vector>

#include "relind/bayes.hpp"
#include "relind/rng.hpp"

namespace {

std::vector<double> gaussian_samples(int n, std::uint64_t seed) {
  auto eng = relind::rng::make_engine(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = 2.0 + 0.7 * relind::rng::normal(eng);
  return out;
}

void BM_StudentTLogpdf(benchmark::State& state) {
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::student_t_logpdf(x, 9.0, 2.0, 0.49));
    x += 0.001;
  }
}
BENCHMARK(BM_StudentTLogpdf);

void BM_FitUnivariatePredictive(benchmark::State& state) {
  const auto samples = gaussian_samples(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::fit_univariate_predictive(samples));
  }
}
BENCHMARK(BM_FitUnivariatePredictive)->Arg(10)->Arg(50)->Arg(500);

void BM_FitLowRankBasis(benchmark::State& state) {
  const int n = 50;
  const int m = static_cast<int>(state.range(0));
  auto eng = relind::rng::make_engine(13);
  Eigen::MatrixXd sources(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) sources(i, j) = relind::rng::normal(eng);
  }
  const int k = (n - 1) / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::fit_low_rank_basis(sources, k));
  }
}
BENCHMARK(BM_FitLowRankBasis)->Arg(50)->Arg(300);

void BM_FitBayesRegression(benchmark::State& state) {
  const int n = 50;
  const int m = static_cast<int>(state.range(0));
  auto eng = relind::rng::make_engine(17);
  Eigen::MatrixXd sources(n, m);
  Eigen::VectorXd targets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) sources(i, j) = relind::rng::normal(eng);
    targets[i] = sources(i, 0) + 0.1 * relind::rng::normal(eng);
  }
  const auto basis = relind::fit_low_rank_basis(sources, (n - 1) / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relind::fit_bayes_regression(basis, targets));
  }
}
BENCHMARK(BM_FitBayesRegression)->Arg(50)->Arg(300);

}  // namespace
