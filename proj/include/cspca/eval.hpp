#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cspca/cspca.hpp"
#include "cspca/types.hpp"

namespace cspca::eval {

// ||Xc W||_F^2 / ||Xc||_F^2. Throws ZeroData on an all-zero Xc.
double variance_explained(const Matrix& xc, const Matrix& w);

// ||W^T Xc^T Yc||_F^2 / ||Xc^T Yc||_F^2. Throws ZeroCrossCovariance when the
// denominator vanishes.
double covariance_explained(const Matrix& xc, const Matrix& yc, const Matrix& w);

// n^-1 ||Yhat - Y||_F^2.
double mse(const Matrix& y, const Matrix& yhat);

// Mean cross-entropy; probabilities are clipped to [1e-12, 1 - 1e-12].
double logloss(const Vector& labels, const Vector& probabilities);

double accuracy(const Vector& labels, const Vector& probabilities, double threshold = 0.5);

// Mann-Whitney rank statistic; ties contribute 1/2. Throws OneClassOnly.
double auc(const Vector& labels, const Vector& scores);

// Metrics for one fitted pipeline; regression and classification fill
// different subsets.
struct MetricsReport {
  std::optional<double> variance_explained;
  std::optional<double> covariance_explained;
  std::optional<double> mse;
  std::optional<double> logloss;
  std::optional<double> accuracy;
  std::optional<double> auc;
};

struct CvReport {
  std::vector<double> grid;
  Matrix fold_scores;             // grid.size() x K; +inf marks a failed fit
  std::vector<double> avg_scores;
  double best_value = 0.0;        // ties resolved toward the smallest value
  double best_score = 0.0;
  std::uint64_t seed = 0;
  int folds = 0;
};

// Fits one candidate on the training folds. Whatever it returns is handed
// back to score_fn together with the held-out fold.
using CvFitFn = std::function<std::any(const Matrix& x_train, const ResponseSet& y_train,
                                       double value, Index q)>;
using CvScoreFn = std::function<double(const std::any& model, const Matrix& x_val,
                                       const ResponseSet& y_val)>;

// K-fold grid search: shuffles indices once with the seed, splits into K
// near-equal contiguous folds, and scores every grid value on every fold.
// Validation rows never reach fit_fn, so training-side centering cannot see
// them. A candidate whose fit or score throws records +inf for that fold.
// With threads > 1 the grid x fold cells run concurrently; the report is
// identical to sequential execution.
CvReport kfold_cv(const Matrix& x, const ResponseSet& response, const std::vector<double>& grid,
                  Index q, int folds, std::uint64_t seed, const CvFitFn& fit_fn,
                  const CvScoreFn& score_fn, int threads = 1);

// The standard pipeline for tuning kappa: fit the projection on the training
// folds, train the default head (least squares / logistic) on the projected
// training data, and score the held-out fold with MSE or log-loss.
CvReport cv_kappa(const Matrix& x, const ResponseSet& response, const std::vector<double>& grid,
                  Index q, int folds, std::uint64_t seed,
                  const SolverSpec& solver = SolverSpec::exact(),
                  const FitOptions& options = {}, int threads = 1);

// {1e-4, 1e-3, 1e-2, 1e-1, 1, 1e1, 1e2}
std::vector<double> default_kappa_grid();

}  // namespace cspca::eval
