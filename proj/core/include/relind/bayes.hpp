#pragma once

#include <Eigen/Dense>
#include <span>

namespace relind {

// Scale-dependent floor applied to every fitted variance so that
// degenerate samples (identical values, exact linear fits) still yield a
// proper density instead of a point mass.
inline double variance_floor(double location) {
  return 1e-9 * (1.0 + location * location);
}

// log density of the location-scale Student t with `df` degrees of
// freedom, location mu and squared scale s2: the standard t density in
// z = (x - mu)/sqrt(s2), divided by sqrt(s2).
double student_t_logpdf(double x, double df, double location, double scale2);

// Posterior predictive density of one coordinate under a normal model
// with the flat prior p(mu, var) ~ 1/var. For samples x_1..x_n with mean
// xbar and SS = sum (x_j - xbar)^2, the predictive for a new draw is
// Student t with df = n-1, location xbar, scale2 = (n+1)*SS/(n*(n-1)).
struct UnivariatePredictive {
  double df = 1.0;
  double location = 0.0;
  double scale2 = 1.0;

  double logpdf(double x) const { return student_t_logpdf(x, df, location, scale2); }
};

// Fits the flat-prior predictive above. Requires n >= 2; scale2 is
// floored by variance_floor(location).
UnivariatePredictive fit_univariate_predictive(std::span<const double> samples);

// Rank-k summary of a source matrix: the top-k right singular vectors of
// S (n x m, rows are source vectors) and the induced design matrix
// X = [S * basis^T, 1] of shape n x (k+1). Projections of the training
// rows onto the basis equal the first k columns of U * Sigma.
struct LowRankBasis {
  int k = 0;
  Eigen::MatrixXd basis;          // k x m, rows are singular vectors
  Eigen::MatrixXd design;         // n x (k+1), last column all ones
  Eigen::VectorXd singular_values;  // all min(n, m) of them
  bool rank_deficient = false;    // numerical rank of S fell below k
};

// Requires 1 <= k <= min(n-2, m). Keeps k columns even when the matrix is
// rank deficient (flagged); trailing basis vectors then carry ~zero
// singular values.
LowRankBasis fit_low_rank_basis(const Eigen::MatrixXd& sources, int k);

// Projects an arbitrary m-vector into regression coordinates:
// (v_1 . p, ..., v_k . p, 1).
Eigen::VectorXd project(const LowRankBasis& basis, const Eigen::VectorXd& p);

// Bayesian linear regression of one target coordinate on the projected
// source, flat prior p(beta, var) ~ 1/var. With X the design (n x p,
// p = k+1) and b the targets:
//   beta_hat = (X^T X)^-1 X^T b
//   df       = n - p
//   sigma0^2 = ||b - X beta_hat||^2 / df      (floored)
// and the predictive at a projected point q is Student t with
//   location = q . beta_hat
//   scale2   = sigma0^2 * (1 + q^T (X^T X)^-1 q).
// When X^T X is ill-conditioned (condition number > 1e12) a jitter of
// 1e-10 * trace(X^T X)/p is added to its diagonal before inversion.
struct BayesRegressionPredictive {
  Eigen::VectorXd coefficients;  // beta_hat, size k+1
  Eigen::MatrixXd gram_inverse;  // (X^T X)^-1, size (k+1) x (k+1)
  double df = 1.0;               // n - k - 1
  double sigma0_2 = 1.0;         // floored residual variance

  UnivariatePredictive predictive(const Eigen::VectorXd& projected) const;
  double logpdf(const Eigen::VectorXd& projected, double x) const {
    return predictive(projected).logpdf(x);
  }
};

// Requires targets.size() == design rows and df = n - k - 1 >= 1.
BayesRegressionPredictive fit_bayes_regression(const LowRankBasis& basis,
                                               const Eigen::VectorXd& targets);

}  // namespace relind
