#include "cspca/predict.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "cspca/linalg.hpp"

namespace cspca::predict {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Penalized Bernoulli log-likelihood; the intercept is the last parameter
// and is not penalized.
double penalized_loglik(const Matrix& za, const Vector& labels, const Vector& theta, double l2) {
  const Vector eta = za * theta;
  double ll = 0.0;
  for (Index i = 0; i < eta.size(); ++i) {
    // log sigma(eta) and log(1 - sigma(eta)) in a stable form.
    const double e = eta[i];
    const double log1pe = e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    ll += labels[i] * e - log1pe;
  }
  const Index q = theta.size() - 1;
  ll -= 0.5 * l2 * theta.head(q).squaredNorm();
  return ll;
}

}  // namespace

RegressionHead ols_fit(const Matrix& z, const Matrix& y) {
  if (z.rows() != y.rows()) {
    throw DimensionMismatch("Z has " + std::to_string(z.rows()) + " rows but Y has " +
                            std::to_string(y.rows()));
  }
  if (z.rows() <= z.cols()) {
    throw Error("need more rows than score columns for least squares");
  }
  const Vector z_means = z.colwise().mean();
  const Vector y_means = y.colwise().mean();
  const Matrix zc = z.rowwise() - z_means.transpose();
  const Matrix yc = y.rowwise() - y_means.transpose();

  RegressionHead head;
  Eigen::ColPivHouseholderQR<Matrix> qr(zc);
  if (qr.rank() < z.cols()) {
    head.rank_deficient = true;
    head.coefficients = linalg::pinv(zc.transpose() * zc) * (zc.transpose() * yc);
  } else {
    head.coefficients = qr.solve(yc);
  }
  head.intercept = y_means - head.coefficients.transpose() * z_means;
  return head;
}

LogisticHead logistic_fit(const Matrix& z, const Vector& labels, double l2,
                          std::vector<double>* ll_trace) {
  if (z.rows() != labels.size()) {
    throw DimensionMismatch("Z has " + std::to_string(z.rows()) + " rows but labels have " +
                            std::to_string(labels.size()));
  }
  const double positives = labels.sum();
  if (positives == 0.0 || positives == static_cast<double>(labels.size())) {
    throw OneClassOnly("logistic regression needs both classes present");
  }

  const Index n = z.rows();
  const Index q = z.cols();
  Matrix za(n, q + 1);
  za.leftCols(q) = z;
  za.col(q).setOnes();

  Vector theta = Vector::Zero(q + 1);
  // Start the intercept at the log-odds of the base rate.
  const double rate = positives / static_cast<double>(n);
  theta[q] = std::log(rate / (1.0 - rate));

  double ll = penalized_loglik(za, labels, theta, l2);
  if (ll_trace) ll_trace->push_back(ll);

  LogisticHead head;
  constexpr int kMaxIterations = 100;
  constexpr double kStepTol = 1e-8;
  int iteration = 0;
  for (; iteration < kMaxIterations; ++iteration) {
    const Vector eta = za * theta;
    Vector mu(n), weight(n);
    for (Index i = 0; i < n; ++i) {
      mu[i] = sigmoid(eta[i]);
      weight[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-12);
    }
    Vector gradient = za.transpose() * (labels - mu);
    gradient.head(q) -= l2 * theta.head(q);
    Matrix hessian = za.transpose() * weight.asDiagonal() * za;
    hessian.topLeftCorner(q, q) += l2 * Matrix::Identity(q, q);

    Vector step = hessian.ldlt().solve(gradient);

    // Step-halving keeps the penalized likelihood non-decreasing even on
    // near-separable data.
    double scale = 1.0;
    Vector candidate = theta + step;
    double candidate_ll = penalized_loglik(za, labels, candidate, l2);
    int halvings = 0;
    while (candidate_ll < ll && halvings < 40) {
      scale *= 0.5;
      candidate = theta + scale * step;
      candidate_ll = penalized_loglik(za, labels, candidate, l2);
      ++halvings;
    }
    if (candidate_ll < ll) break;  // cannot improve

    const double step_norm = (scale * step).cwiseAbs().maxCoeff();
    theta = candidate;
    ll = candidate_ll;
    if (ll_trace) ll_trace->push_back(ll);
    if (step_norm < kStepTol) {
      head.converged = true;
      ++iteration;
      break;
    }
  }

  head.coefficients = theta.head(q);
  head.intercept = theta[q];
  head.iterations = iteration;
  return head;
}

Matrix predict_regression(const RegressionHead& head, const Matrix& z) {
  if (z.cols() != head.coefficients.rows()) {
    throw DimensionMismatch("Z has " + std::to_string(z.cols()) + " columns; the head expects " +
                            std::to_string(head.coefficients.rows()));
  }
  return (z * head.coefficients).rowwise() + head.intercept.transpose();
}

Vector predict_proba(const LogisticHead& head, const Matrix& z) {
  if (z.cols() != head.coefficients.size()) {
    throw DimensionMismatch("Z has " + std::to_string(z.cols()) + " columns; the head expects " +
                            std::to_string(head.coefficients.size()));
  }
  const Vector eta = (z * head.coefficients).array() + head.intercept;
  Vector probabilities(eta.size());
  for (Index i = 0; i < eta.size(); ++i) {
    double prob = sigmoid(eta[i]);
    // Keep strictly inside (0,1) even when the linear predictor saturates.
    prob = std::min(std::max(prob, 1e-15), 1.0 - 1e-15);
    probabilities[i] = prob;
  }
  return probabilities;
}

}  // namespace cspca::predict
