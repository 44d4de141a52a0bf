#include "relind/bayes.hpp"

#include <cmath>
#include <numbers>

#include "relind/errors.hpp"

namespace relind {

double student_t_logpdf(double x, double df, double location, double scale2) {
  const double z = x - location;
  const double q = z * z / (df * scale2);
  return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
         0.5 * std::log(df * std::numbers::pi * scale2) -
         0.5 * (df + 1.0) * std::log1p(q);
}

UnivariatePredictive fit_univariate_predictive(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw DataError("predictive fit needs at least 2 samples, got " + std::to_string(n));
  }
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    ss += d * d;
  }
  UnivariatePredictive p;
  p.df = static_cast<double>(n - 1);
  p.location = mean;
  const double nn = static_cast<double>(n);
  p.scale2 = std::max((nn + 1.0) * ss / (nn * (nn - 1.0)), variance_floor(mean));
  return p;
}

LowRankBasis fit_low_rank_basis(const Eigen::MatrixXd& sources, int k) {
  const Eigen::Index n = sources.rows();
  const Eigen::Index m = sources.cols();
  const Eigen::Index k_max = std::min<Eigen::Index>(n - 2, m);
  if (k < 1 || k > k_max) {
    throw DataError("basis size k=" + std::to_string(k) + " outside [1, " +
                    std::to_string(std::max<Eigen::Index>(k_max, 0)) + "] for " +
                    std::to_string(n) + "x" + std::to_string(m) + " sources");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sources, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  LowRankBasis basis;
  basis.k = k;
  basis.singular_values = sv;
  basis.basis = svd.matrixV().leftCols(k).transpose();

  // Numerical rank, judged against the usual spectral tolerance.
  const double tol =
      static_cast<double>(std::max(n, m)) * 2.220446049250313e-16 * (sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol) ++rank;
  }
  basis.rank_deficient = rank < k;

  basis.design.resize(n, k + 1);
  basis.design.leftCols(k).noalias() =
      svd.matrixU().leftCols(k) * sv.head(k).asDiagonal();
  basis.design.col(k).setOnes();
  return basis;
}

Eigen::VectorXd project(const LowRankBasis& basis, const Eigen::VectorXd& p) {
  if (p.size() != basis.basis.cols()) {
    throw DataError("projection dimension mismatch: vector has " +
                    std::to_string(p.size()) + " coordinates, basis expects " +
                    std::to_string(basis.basis.cols()));
  }
  Eigen::VectorXd out(basis.k + 1);
  out.head(basis.k).noalias() = basis.basis * p;
  out[basis.k] = 1.0;
  return out;
}

BayesRegressionPredictive fit_bayes_regression(const LowRankBasis& basis,
                                               const Eigen::VectorXd& targets) {
  const Eigen::MatrixXd& x = basis.design;
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (targets.size() != n) {
    throw DataError("regression target count " + std::to_string(targets.size()) +
                    " does not match design rows " + std::to_string(n));
  }
  const double df = static_cast<double>(n - p);
  if (df < 1.0) {
    throw DataError("regression needs n - k - 1 >= 1, got n=" + std::to_string(n) +
                    ", k=" + std::to_string(p - 1));
  }

  Eigen::MatrixXd gram = x.transpose() * x;

  // Jitter only when the normal equations are genuinely ill-conditioned.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double ev_min = eig.eigenvalues().minCoeff();
  const double ev_max = eig.eigenvalues().maxCoeff();
  if (!(ev_min > 0.0) || ev_max / ev_min > 1e12) {
    gram.diagonal().array() += 1e-10 * gram.trace() / static_cast<double>(p);
  }

  BayesRegressionPredictive model;
  model.gram_inverse =
      gram.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  // Symmetrize so quadratic forms cannot go negative through asymmetry.
  model.gram_inverse = 0.5 * (model.gram_inverse + model.gram_inverse.transpose()).eval();
  model.coefficients.noalias() = model.gram_inverse * (x.transpose() * targets);
  model.df = df;

  const double rss = (targets - x * model.coefficients).squaredNorm();
  const double target_mean = targets.mean();
  model.sigma0_2 = std::max(rss / df, variance_floor(target_mean));
  return model;
}

UnivariatePredictive BayesRegressionPredictive::predictive(
    const Eigen::VectorXd& projected) const {
  if (projected.size() != coefficients.size()) {
    throw DataError("projected point has " + std::to_string(projected.size()) +
                    " coordinates, model expects " + std::to_string(coefficients.size()));
  }
  UnivariatePredictive out;
  out.df = df;
  out.location = coefficients.dot(projected);
  const double leverage = projected.dot(gram_inverse * projected);
  out.scale2 = sigma0_2 * (1.0 + std::max(leverage, 0.0));
  return out;
}

}  // namespace relind
