#pragma once

#include <vector>

#include "cspca/types.hpp"

namespace cspca::predict {

struct RegressionHead {
  Matrix coefficients;  // q x k
  Vector intercept;     // length k
  bool rank_deficient = false;  // collinear scores; solved via pseudoinverse
};

struct LogisticHead {
  Vector coefficients;  // length q
  double intercept = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Least squares with an explicit intercept. Collinear score columns are
// flagged and solved through the pseudoinverse (minimum-norm coefficients).
RegressionHead ols_fit(const Matrix& z, const Matrix& y);

// Penalized logistic regression via iteratively reweighted least squares
// with step-halving. The l2 penalty applies to the coefficients only, not
// the intercept; the default 1e-6 keeps separable data finite. Stops when
// the parameter step's infinity norm drops below 1e-8 or after 100
// iterations (flagged, not fatal). ll_trace, when given, records the
// penalized log-likelihood after every accepted step.
LogisticHead logistic_fit(const Matrix& z, const Vector& labels, double l2 = 1e-6,
                          std::vector<double>* ll_trace = nullptr);

Matrix predict_regression(const RegressionHead& head, const Matrix& z);

// Probabilities strictly inside (0,1) for finite inputs.
Vector predict_proba(const LogisticHead& head, const Matrix& z);

}  // namespace cspca::predict
