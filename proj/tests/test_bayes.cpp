#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "relind/bayes.hpp"
#include "relind/errors.hpp"
#include "relind/rng.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"

using namespace relind;

namespace {

std::vector<double> seeded_samples(int n, std::uint64_t seed, double loc = 0.0,
                                   double sd = 1.0) {
  auto eng = rng::make_engine(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = loc + sd * rng::normal(eng);
  return out;
}

// Integral of the predictive density over the whole real line: a finite
// core around the location plus adaptive tails.
double predictive_mass(const UnivariatePredictive& p) {
  const double s = std::sqrt(p.scale2);
  auto f = [&](double x) { return std::exp(p.logpdf(x)); };
  const double core = testsup::integrate(f, p.location - 50 * s, p.location + 50 * s);
  const double left = testsup::integrate_from_minus_inf(f, p.location - 50 * s);
  const double right = testsup::integrate_to_inf(f, p.location + 50 * s);
  return core + left + right;
}

}  // namespace

TEST_SUITE("bayes") {
  TEST_CASE("t logpdf at the Cauchy mode") {
    // df=1, location 0, scale2 1 is the standard Cauchy: pdf(0) = 1/pi.
    CHECK(student_t_logpdf(0.0, 1.0, 0.0, 1.0) ==
          doctest::Approx(std::log(1.0 / std::numbers::pi)).epsilon(1e-12));
    CHECK(student_t_logpdf(0.0, 1.0, 0.0, 1.0) ==
          doctest::Approx(-1.1447298858494002).epsilon(1e-10));
  }

  TEST_CASE("t logpdf approaches the normal at high df") {
    // Standard normal log-density at 1 is -0.5*log(2*pi) - 0.5.
    const double normal1 = -1.4189385332046727;
    CHECK(std::abs(student_t_logpdf(1.0, 200.0, 0.0, 1.0) - normal1) < 5e-3);
  }

  TEST_CASE("t logpdf is maximized at the location") {
    const UnivariatePredictive p{.df = 3.0, .location = 1.7, .scale2 = 0.6};
    const double peak = p.logpdf(p.location);
    for (double d : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
      CHECK(peak > p.logpdf(p.location + d));
      CHECK(peak > p.logpdf(p.location - d));
    }
  }

  TEST_CASE("fit on [-1, 1]") {
    const std::vector<double> samples = {-1.0, 1.0};
    const auto p = fit_univariate_predictive(samples);
    CHECK(p.df == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.location == doctest::Approx(0.0).epsilon(1e-15));
    // (n+1) * SS / (n * (n-1)) = 3 * 2 / 2 = 3.
    CHECK(p.scale2 == doctest::Approx(3.0).epsilon(1e-15));
  }

  TEST_CASE("fit on [1, 2, 3]") {
    const std::vector<double> samples = {1.0, 2.0, 3.0};
    const auto p = fit_univariate_predictive(samples);
    CHECK(p.df == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.location == doctest::Approx(2.0).epsilon(1e-15));
    // 4 * 2 / (3 * 2) = 4/3.
    CHECK(p.scale2 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  }

  TEST_CASE("degenerate samples land on the variance floor") {
    const std::vector<double> samples = {5.0, 5.0, 5.0};
    const auto p = fit_univariate_predictive(samples);
    CHECK(p.location == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(p.scale2 == variance_floor(5.0));
    CHECK(std::isfinite(p.logpdf(5.0)));
  }

  TEST_CASE("fit requires two samples") {
    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(fit_univariate_predictive(one), DataError);
    const std::vector<double> none;
    CHECK_THROWS_AS(fit_univariate_predictive(none), DataError);
  }

  TEST_CASE("fit is exactly translation-equivariant on exact inputs") {
    // Integer samples and shift keep every intermediate sum exact.
    const std::vector<double> samples = {1.0, 2.0, 6.0};
    const std::vector<double> shifted = {4.0, 5.0, 9.0};
    const auto p = fit_univariate_predictive(samples);
    const auto q = fit_univariate_predictive(shifted);
    CHECK(q.df == p.df);
    CHECK(q.location == p.location + 3.0);
    CHECK(q.scale2 == p.scale2);
  }

  TEST_CASE("fit is scale-equivariant within 1e-12") {
    const auto samples = seeded_samples(9, 21, 0.4, 1.3);
    std::vector<double> scaled;
    for (double v : samples) scaled.push_back(3.0 * v);
    const auto p = fit_univariate_predictive(samples);
    const auto q = fit_univariate_predictive(scaled);
    CHECK(q.df == p.df);
    CHECK(q.location == doctest::Approx(3.0 * p.location).epsilon(1e-12));
    CHECK(q.scale2 == doctest::Approx(9.0 * p.scale2).epsilon(1e-12));
  }

  TEST_CASE("closed form matches nested quadrature") {
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      for (int n : {2, 5}) {
        const auto samples = seeded_samples(n, seed * 10 + n, 1.0, 2.0);
        const auto p = fit_univariate_predictive(samples);
        const double s = std::sqrt(p.scale2);
        for (double offset : {-4.0, -1.0, 0.0, 1.5, 6.0}) {
          const double x = p.location + offset * s;
          const double closed = std::exp(p.logpdf(x));
          const double oracle = testsup::univariate_predictive_quadrature(samples, x);
          CHECK(std::abs(closed - oracle) / oracle < 1e-5);
        }
      }
    }
  }

  TEST_CASE("predictive density integrates to one") {
    for (std::uint64_t seed : {3ULL, 4ULL, 5ULL}) {
      const auto samples = seeded_samples(4, seed, -2.0, 0.7);
      const auto p = fit_univariate_predictive(samples);
      CHECK(std::abs(predictive_mass(p) - 1.0) < 1e-6);
    }
  }

  TEST_CASE("rank-one basis recovers the axis") {
    Eigen::MatrixXd sources(3, 2);
    sources << 1, 0, 2, 0, 3, 0;
    const auto basis = fit_low_rank_basis(sources, 1);
    REQUIRE(basis.k == 1);
    const double sign = basis.basis(0, 0) > 0 ? 1.0 : -1.0;
    CHECK(basis.basis(0, 0) == doctest::Approx(sign).epsilon(1e-12));
    CHECK(std::abs(basis.basis(0, 1)) < 1e-12);
    // Projections are (1, 2, 3) up to the same sign; bias column is ones.
    for (int j = 0; j < 3; ++j) {
      CHECK(basis.design(j, 0) == doctest::Approx(sign * (j + 1)).epsilon(1e-12));
      CHECK(basis.design(j, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("reconstruction error is nonincreasing in k") {
    auto eng = rng::make_engine(31);
    Eigen::MatrixXd sources(6, 4);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 4; ++j) sources(i, j) = rng::normal(eng);
    }
    double previous = -1.0;
    for (int k = 1; k <= 4; ++k) {
      const auto basis = fit_low_rank_basis(sources, k);
      const Eigen::MatrixXd projected = sources * basis.basis.transpose();
      const Eigen::MatrixXd reconstructed = projected * basis.basis;
      const double err = (sources - reconstructed).squaredNorm();
      if (previous >= 0.0) CHECK(err <= previous + 1e-10);
      previous = err;
    }
  }

  TEST_CASE("identical rows flag rank deficiency") {
    Eigen::MatrixXd sources(4, 3);
    for (int i = 0; i < 4; ++i) sources.row(i) << 2, -1, 0.5;
    const auto basis = fit_low_rank_basis(sources, 2);
    CHECK(basis.rank_deficient);
    CHECK(basis.singular_values[1] < 1e-9 * basis.singular_values[0]);
    // First basis vector parallel to the common row.
    const Eigen::VectorXd row = sources.row(0).normalized();
    CHECK(std::abs(std::abs(basis.basis.row(0).dot(row)) - 1.0) < 1e-10);
  }

  TEST_CASE("basis rejects k out of range") {
    Eigen::MatrixXd sources(4, 3);
    sources.setRandom();
    CHECK_THROWS_AS(fit_low_rank_basis(sources, 0), DataError);
    CHECK_THROWS_AS(fit_low_rank_basis(sources, 3), DataError);  // > n-2
  }

  TEST_CASE("project appends the bias coordinate") {
    Eigen::MatrixXd sources(3, 2);
    sources << 1, 0, 2, 0, 3, 0;
    const auto basis = fit_low_rank_basis(sources, 1);
    const double sign = basis.basis(0, 0) > 0 ? 1.0 : -1.0;
    Eigen::VectorXd p(2);
    p << 3, 7;
    const Eigen::VectorXd q = project(basis, p);
    REQUIRE(q.size() == 2);
    CHECK(q[0] == doctest::Approx(sign * 3.0).epsilon(1e-12));
    CHECK(q[1] == 1.0);
    Eigen::VectorXd orth(2);
    orth << 0, 7;
    const Eigen::VectorXd qo = project(basis, orth);
    CHECK(std::abs(qo[0]) < 1e-12);
    CHECK(qo[1] == 1.0);
  }

  TEST_CASE("projected training rows equal design rows") {
    auto eng = rng::make_engine(33);
    Eigen::MatrixXd sources(7, 5);
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 5; ++j) sources(i, j) = rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 3);
    for (int j = 0; j < 7; ++j) {
      const Eigen::VectorXd q = project(basis, sources.row(j));
      CHECK((q.transpose() - basis.design.row(j)).norm() < 1e-8);
    }
  }

  TEST_CASE("perfect linear targets give the exact coefficients") {
    auto eng = rng::make_engine(41);
    Eigen::MatrixXd sources(5, 3);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 3; ++j) sources(i, j) = rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 1);
    const Eigen::VectorXd targets =
        2.0 * basis.design.col(0) + Eigen::VectorXd::Ones(5);
    const auto model = fit_bayes_regression(basis, targets);
    CHECK(model.coefficients[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(model.coefficients[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(model.df == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(model.sigma0_2 == variance_floor(targets.mean()));
  }

  TEST_CASE("constant targets give a bias-only fit") {
    auto eng = rng::make_engine(43);
    Eigen::MatrixXd sources(6, 2);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 2; ++j) sources(i, j) = rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 1);
    const Eigen::VectorXd targets = Eigen::VectorXd::Constant(6, 4.5);
    const auto model = fit_bayes_regression(basis, targets);
    CHECK(std::abs(model.coefficients[0]) < 1e-9);
    CHECK(model.coefficients[1] == doctest::Approx(4.5).epsilon(1e-9));
  }

  TEST_CASE("least squares solution beats its perturbations") {
    auto eng = rng::make_engine(47);
    Eigen::MatrixXd sources(8, 3);
    Eigen::VectorXd targets(8);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 3; ++j) sources(i, j) = rng::normal(eng);
      targets[i] = rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 2);
    const auto model = fit_bayes_regression(basis, targets);
    const double rss = (targets - basis.design * model.coefficients).squaredNorm();
    for (int axis = 0; axis < 3; ++axis) {
      for (double d : {-0.1, 0.01, 0.3}) {
        Eigen::VectorXd beta = model.coefficients;
        beta[axis] += d;
        CHECK((targets - basis.design * beta).squaredNorm() >= rss);
      }
    }
  }

  TEST_CASE("regression requires at least one residual degree of freedom") {
    Eigen::MatrixXd sources(3, 4);
    sources.setRandom();
    const auto basis = fit_low_rank_basis(sources, 1);  // n=3, k=1 -> df = 1, fine
    Eigen::VectorXd targets(3);
    targets.setRandom();
    CHECK_NOTHROW(fit_bayes_regression(basis, targets));
    Eigen::VectorXd wrong(4);
    wrong.setRandom();
    CHECK_THROWS_AS(fit_bayes_regression(basis, wrong), DataError);
  }

  TEST_CASE("predictive variance never shrinks below sigma0_2") {
    auto eng = rng::make_engine(51);
    Eigen::MatrixXd sources(9, 4);
    Eigen::VectorXd targets(9);
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 4; ++j) sources(i, j) = rng::normal(eng);
      targets[i] = sources(i, 0) + 0.3 * rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 3);
    const auto model = fit_bayes_regression(basis, targets);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd p(4);
      for (int j = 0; j < 4; ++j) p[j] = 5.0 * rng::normal(eng);
      const auto pred = model.predictive(project(basis, p));
      CHECK(pred.scale2 >= model.sigma0_2);
      CHECK(pred.df == model.df);
    }
  }

  TEST_CASE("regression closed form matches the quadrature oracle") {
    auto eng = rng::make_engine(61);
    Eigen::MatrixXd sources(6, 3);
    Eigen::VectorXd targets(6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 3; ++j) sources(i, j) = rng::normal(eng);
      targets[i] = 1.5 * sources(i, 0) - 0.5 + 0.4 * rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 1);
    const auto model = fit_bayes_regression(basis, targets);
    Eigen::VectorXd p(3);
    p << 0.3, -0.8, 0.5;
    const Eigen::VectorXd q = project(basis, p);
    const auto pred = model.predictive(q);
    const double s = std::sqrt(pred.scale2);
    for (double offset : {-2.0, 0.0, 1.0}) {
      const double x = pred.location + offset * s;
      const double closed = std::exp(pred.logpdf(x));
      const double oracle =
          testsup::regression_predictive_quadrature(basis.design, targets, q, x);
      CHECK(std::abs(closed - oracle) / oracle < 1e-4);
    }
  }

  TEST_CASE("sampling the posterior reproduces the predictive mean") {
    auto eng = rng::make_engine(71);
    Eigen::MatrixXd sources(12, 3);
    Eigen::VectorXd targets(12);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 3; ++j) sources(i, j) = rng::normal(eng);
      targets[i] = 0.8 * sources(i, 1) + 2.0 + 0.5 * rng::normal(eng);
    }
    const auto basis = fit_low_rank_basis(sources, 2);  // df = 12 - 3 = 9
    const auto model = fit_bayes_regression(basis, targets);
    Eigen::VectorXd p(3);
    p << 0.7, -0.2, 1.1;
    const Eigen::VectorXd q = project(basis, p);
    const auto pred = model.predictive(q);

    const Eigen::MatrixXd chol = model.gram_inverse.llt().matrixL();
    const int df = static_cast<int>(model.df);
    const int n_draws = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int it = 0; it < n_draws; ++it) {
      double chi2 = 0.0;
      for (int j = 0; j < df; ++j) {
        const double z = rng::normal(eng);
        chi2 += z * z;
      }
      const double sigma2 = model.df * model.sigma0_2 / chi2;
      Eigen::VectorXd z(q.size());
      for (int j = 0; j < z.size(); ++j) z[j] = rng::normal(eng);
      const Eigen::VectorXd beta =
          model.coefficients + std::sqrt(sigma2) * (chol * z);
      const double x = q.dot(beta) + std::sqrt(sigma2) * rng::normal(eng);
      sum += x;
      sum2 += x * x;
    }
    const double mean = sum / n_draws;
    const double var = sum2 / n_draws - mean * mean;
    const double se = std::sqrt(var / n_draws);
    CHECK(std::abs(mean - pred.location) < 3.0 * se);
  }

  TEST_CASE("variance floor formula") {
    CHECK(variance_floor(0.0) == 1e-9);
    CHECK(variance_floor(3.0) == 1e-9 * 10.0);
    CHECK(variance_floor(-3.0) == variance_floor(3.0));
  }
}
