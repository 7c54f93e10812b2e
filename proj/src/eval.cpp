#include "cspca/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cspca/predict.hpp"
#include "cspca/rng.hpp"

namespace cspca::eval {

double variance_explained(const Matrix& xc, const Matrix& w) {
  if (xc.cols() != w.rows()) {
    throw DimensionMismatch("Xc has " + std::to_string(xc.cols()) + " columns but W has " +
                            std::to_string(w.rows()) + " rows");
  }
  const double total = xc.squaredNorm();
  if (total == 0.0) throw ZeroData("variance of an all-zero matrix is undefined");
  return (xc * w).squaredNorm() / total;
}

double covariance_explained(const Matrix& xc, const Matrix& yc, const Matrix& w) {
  if (xc.rows() != yc.rows()) {
    throw DimensionMismatch("Xc and Yc disagree on the number of rows");
  }
  if (xc.cols() != w.rows()) {
    throw DimensionMismatch("Xc has " + std::to_string(xc.cols()) + " columns but W has " +
                            std::to_string(w.rows()) + " rows");
  }
  const Matrix cross = xc.transpose() * yc;
  const double total = cross.squaredNorm();
  if (total == 0.0) throw ZeroCrossCovariance("cross-covariance is identically zero");
  return (w.transpose() * cross).squaredNorm() / total;
}

double mse(const Matrix& y, const Matrix& yhat) {
  if (y.rows() != yhat.rows() || y.cols() != yhat.cols()) {
    throw DimensionMismatch("Y and Yhat shapes differ");
  }
  return (yhat - y).squaredNorm() / static_cast<double>(y.rows());
}

double logloss(const Vector& labels, const Vector& probabilities) {
  if (labels.size() != probabilities.size()) {
    throw DimensionMismatch("labels and probabilities differ in length");
  }
  double total = 0.0;
  for (Index i = 0; i < labels.size(); ++i) {
    const double p = std::min(std::max(probabilities[i], 1e-12), 1.0 - 1e-12);
    total += labels[i] > 0.5 ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / static_cast<double>(labels.size());
}

double accuracy(const Vector& labels, const Vector& probabilities, double threshold) {
  if (labels.size() != probabilities.size()) {
    throw DimensionMismatch("labels and probabilities differ in length");
  }
  Index correct = 0;
  for (Index i = 0; i < labels.size(); ++i) {
    const double predicted = probabilities[i] >= threshold ? 1.0 : 0.0;
    if (predicted == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double auc(const Vector& labels, const Vector& scores) {
  if (labels.size() != scores.size()) {
    throw DimensionMismatch("labels and scores differ in length");
  }
  const Index n = labels.size();
  Index positives = 0;
  for (Index i = 0; i < n; ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw NonBinaryLabels("label at row " + std::to_string(i) + " is not 0/1");
    }
    if (labels[i] == 1.0) ++positives;
  }
  const Index negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw OneClassOnly("AUC needs both classes present");
  }

  // Rank-sum with midranks for ties: AUC = (R_pos - n_pos (n_pos + 1)/2) / (n_pos n_neg).
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  Index i = 0;
  while (i < n) {
    Index j = i;
    while (j < n && scores[order[static_cast<std::size_t>(j)]] ==
                        scores[order[static_cast<std::size_t>(i)]]) {
      ++j;
    }
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (Index t = i; t < j; ++t) {
      if (labels[order[static_cast<std::size_t>(t)]] == 1.0) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

CvReport kfold_cv(const Matrix& x, const ResponseSet& response, const std::vector<double>& grid,
                  Index q, int folds, std::uint64_t seed, const CvFitFn& fit_fn,
                  const CvScoreFn& score_fn, int threads) {
  const Index n = x.rows();
  if (folds < 2) throw Error("need at least 2 folds");
  if (n < folds) throw Error("need at least as many rows as folds");
  if (grid.empty()) throw Error("hyperparameter grid is empty");
  if (x.rows() != response.rows()) {
    throw DimensionMismatch("X and response disagree on the number of rows");
  }

  const std::vector<Index> perm = Rng(seed).permutation(n);
  const auto fold_begin = [&](int f) { return static_cast<Index>(f) * n / folds; };

  const int grid_size = static_cast<int>(grid.size());
  CvReport report;
  report.grid = grid;
  report.seed = seed;
  report.folds = folds;
  report.fold_scores = Matrix::Constant(grid_size, folds, std::numeric_limits<double>::infinity());

  // Each grid x fold cell is independent; cells write disjoint entries, so
  // any execution order yields the same report.
  const auto run_cell = [&](int cell) {
    const int g = cell / folds;
    const int f = cell % folds;
    const Index begin = fold_begin(f);
    const Index end = fold_begin(f + 1);

    std::vector<Index> train_idx, val_idx;
    train_idx.reserve(static_cast<std::size_t>(n - (end - begin)));
    val_idx.reserve(static_cast<std::size_t>(end - begin));
    for (Index i = 0; i < n; ++i) {
      (i >= begin && i < end ? val_idx : train_idx).push_back(perm[static_cast<std::size_t>(i)]);
    }

    Matrix x_train(static_cast<Index>(train_idx.size()), x.cols());
    for (Index i = 0; i < x_train.rows(); ++i) x_train.row(i) = x.row(train_idx[static_cast<std::size_t>(i)]);
    Matrix x_val(static_cast<Index>(val_idx.size()), x.cols());
    for (Index i = 0; i < x_val.rows(); ++i) x_val.row(i) = x.row(val_idx[static_cast<std::size_t>(i)]);
    const ResponseSet y_train = response.take_rows(train_idx);
    const ResponseSet y_val = response.take_rows(val_idx);

    double score = std::numeric_limits<double>::infinity();
    try {
      const std::any model = fit_fn(x_train, y_train, grid[static_cast<std::size_t>(g)], q);
      score = score_fn(model, x_val, y_val);
      if (!std::isfinite(score)) score = std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      score = std::numeric_limits<double>::infinity();
    }
    report.fold_scores(g, f) = score;
  };

  const int cells = grid_size * folds;
  const int workers = std::max(1, std::min(threads, cells));
  if (workers == 1) {
    for (int cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1)) {
          run_cell(cell);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  report.avg_scores.resize(static_cast<std::size_t>(grid_size));
  for (int g = 0; g < grid_size; ++g) {
    double sum = 0.0;
    for (int f = 0; f < folds; ++f) sum += report.fold_scores(g, f);
    report.avg_scores[static_cast<std::size_t>(g)] = sum / folds;
  }

  int best = 0;
  for (int g = 1; g < grid_size; ++g) {
    const double score = report.avg_scores[static_cast<std::size_t>(g)];
    const double incumbent = report.avg_scores[static_cast<std::size_t>(best)];
    if (score < incumbent ||
        (score == incumbent && grid[static_cast<std::size_t>(g)] < grid[static_cast<std::size_t>(best)])) {
      best = g;
    }
  }
  report.best_value = grid[static_cast<std::size_t>(best)];
  report.best_score = report.avg_scores[static_cast<std::size_t>(best)];
  return report;
}

namespace {

struct CspcaPipeline {
  ProjectionModel projection;
  predict::RegressionHead ols;
  predict::LogisticHead logistic;
};

}  // namespace

CvReport cv_kappa(const Matrix& x, const ResponseSet& response, const std::vector<double>& grid,
                  Index q, int folds, std::uint64_t seed, const SolverSpec& solver,
                  const FitOptions& options, int threads) {
  const CvFitFn fit_fn = [&solver, &options](const Matrix& x_train, const ResponseSet& y_train,
                                             double kappa, Index q_components) -> std::any {
    CspcaPipeline pipeline;
    pipeline.projection = fit(x_train, y_train, q_components, kappa, solver, options);
    const Matrix z_train = transform(pipeline.projection, x_train);
    if (y_train.task() == Task::kRegression) {
      pipeline.ols = predict::ols_fit(z_train, y_train.values());
    } else {
      pipeline.logistic = predict::logistic_fit(z_train, y_train.labels());
    }
    return pipeline;
  };
  const CvScoreFn score_fn = [](const std::any& model, const Matrix& x_val,
                                const ResponseSet& y_val) -> double {
    const auto& pipeline = std::any_cast<const CspcaPipeline&>(model);
    const Matrix z_val = transform(pipeline.projection, x_val);
    if (y_val.task() == Task::kRegression) {
      return mse(y_val.values(), predict::predict_regression(pipeline.ols, z_val));
    }
    return logloss(y_val.labels(), predict::predict_proba(pipeline.logistic, z_val));
  };
  return kfold_cv(x, response, grid, q, folds, seed, fit_fn, score_fn, threads);
}

std::vector<double> default_kappa_grid() {
  return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
}

}  // namespace cspca::eval
