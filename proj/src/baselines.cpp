#include "cspca/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "cspca/cspca.hpp"
#include "cspca/eval.hpp"
#include "cspca/linalg.hpp"
#include "cspca/predict.hpp"

namespace cspca::baselines {

namespace {

void apply_sign_convention(Matrix& w) {
  for (Index j = 0; j < w.cols(); ++j) {
    const double colmax = w.col(j).cwiseAbs().maxCoeff();
    if (colmax == 0.0) continue;
    const double tol = 1e-12 * colmax;
    for (Index i = 0; i < w.rows(); ++i) {
      if (std::abs(w(i, j)) > tol) {
        if (w(i, j) < 0.0) w.col(j) = -w.col(j);
        break;
      }
    }
  }
}

// Top-q eigenpairs of Xc^T Xc. Goes through the thin SVD of Xc when that is
// cheaper (n < p); the two routes agree because the right singular vectors
// of Xc are the eigenvectors of Xc^T Xc with eigenvalues sigma^2.
linalg::EigenPairs gram_eig_topq(const Matrix& xc, Index q) {
  const Index n = xc.rows();
  const Index p = xc.cols();
  if (q < 1 || q > p) {
    throw BadRank("q = " + std::to_string(q) + " out of range for p = " + std::to_string(p));
  }
  if (n < p && q <= std::min(n, p)) {
    const linalg::SvdResult decomposition = linalg::svd(xc);
    linalg::EigenPairs pairs;
    pairs.values = decomposition.singular_values.head(q).array().square();
    pairs.vectors = decomposition.v.leftCols(q);
    apply_sign_convention(pairs.vectors);
    return pairs;
  }
  return linalg::sym_eig_topq(xc.transpose() * xc, q);
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::kPca: return "pca";
    case Method::kHsic: return "hsic";
    case Method::kBair: return "bair";
    case Method::kPls: return "pls";
    case Method::kLda: return "lda";
  }
  return "unknown";
}

BaselineModel pca_fit(const Matrix& x, Index q) {
  ensure_finite(x, "X");
  auto [xc, means] = linalg::center_columns(x);
  linalg::EigenPairs pairs = gram_eig_topq(xc, q);

  BaselineModel model;
  model.method = Method::kPca;
  model.w = std::move(pairs.vectors);
  model.eigenvalues = std::move(pairs.values);
  model.x_means = std::move(means);
  model.x_scales = Vector::Ones(x.cols());
  return model;
}

Matrix rbf_kernel(const Matrix& y, double sigma) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  const Index n = y.rows();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double value = std::exp(-(y.row(i) - y.row(j)).squaredNorm() * inv);
      k(i, j) = value;
      k(j, i) = value;
    }
  }
  return k;
}

double median_pairwise_distance(const Matrix& y) {
  const Index n = y.rows();
  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      distances.push_back((y.row(i) - y.row(j)).norm());
    }
  }
  if (distances.empty()) return 1.0;
  const auto mid = distances.begin() + static_cast<std::ptrdiff_t>(distances.size() / 2);
  std::nth_element(distances.begin(), mid, distances.end());
  const double median = *mid;
  return median > 0.0 ? median : 1.0;
}

BaselineModel hsic_spca_fit(const Matrix& x, const ResponseSet& response, Index q,
                            const KernelSpec& kernel) {
  ensure_finite(x, "X");
  if (x.rows() != response.rows()) {
    throw DimensionMismatch("X and response disagree on the number of rows");
  }

  double sigma_used = 0.0;
  Matrix k;
  if (kernel.kind == KernelSpec::Kind::kDelta) {
    if (response.task() != Task::kClassification) {
      throw NonBinaryLabels("delta kernel requires binary labels");
    }
    k = delta_kernel(response.labels());
  } else {
    sigma_used = kernel.sigma > 0.0 ? kernel.sigma : median_pairwise_distance(response.values());
    k = rbf_kernel(response.values(), sigma_used);
  }
  if (kernel.center) {
    // H K H for symmetric K: subtract row and column means, add the grand mean.
    const Vector row_means = k.rowwise().mean();
    const double grand_mean = row_means.mean();
    k.colwise() -= row_means;
    k.rowwise() -= row_means.transpose();
    k.array() += grand_mean;
  }

  auto [xc, means] = linalg::center_columns(x);
  Matrix objective = xc.transpose() * k * xc;
  objective = 0.5 * (objective + objective.transpose()).eval();
  linalg::EigenPairs pairs = linalg::sym_eig_topq(objective, q);

  BaselineModel model;
  model.method = Method::kHsic;
  model.kernel = kernel;
  model.sigma_used = sigma_used;
  model.w = std::move(pairs.vectors);
  model.eigenvalues = std::move(pairs.values);
  model.x_means = std::move(means);
  model.x_scales = Vector::Ones(x.cols());
  const double scale = std::max(1.0, objective.cwiseAbs().maxCoeff());
  model.degenerate_spectrum = model.eigenvalues.cwiseAbs().maxCoeff() <= 1e-12 * scale;
  return model;
}

BaselineModel bair_fit(const Matrix& x, const Vector& y, double theta, Index q) {
  ensure_finite(x, "X");
  if (x.rows() != y.size()) {
    throw DimensionMismatch("X and y disagree on the number of rows");
  }
  if (theta < 0.0) throw Error("theta must be nonnegative");

  auto [xc, means] = linalg::center_columns(x);
  const Vector yc = y.array() - y.mean();

  const Index p = x.cols();
  Vector beta = Vector::Zero(p);
  std::vector<Index> kept;
  for (Index j = 0; j < p; ++j) {
    const double ss = xc.col(j).squaredNorm();
    if (ss > 0.0) beta[j] = xc.col(j).dot(yc) / std::sqrt(ss);
    if (std::abs(beta[j]) > theta) kept.push_back(j);
  }
  if (static_cast<Index>(kept.size()) < q) {
    throw TooFewFeatures("only " + std::to_string(kept.size()) +
                         " features exceed theta = " + std::to_string(theta) +
                         "; q = " + std::to_string(q));
  }

  Matrix x_kept(xc.rows(), static_cast<Index>(kept.size()));
  for (Index t = 0; t < x_kept.cols(); ++t) {
    x_kept.col(t) = xc.col(kept[static_cast<std::size_t>(t)]);
  }
  linalg::EigenPairs pairs = gram_eig_topq(x_kept, q);

  BaselineModel model;
  model.method = Method::kBair;
  model.theta = theta;
  model.kept_features = std::move(kept);
  model.w = Matrix::Zero(p, q);
  for (Index t = 0; t < static_cast<Index>(model.kept_features.size()); ++t) {
    model.w.row(model.kept_features[static_cast<std::size_t>(t)]) = pairs.vectors.row(t);
  }
  model.eigenvalues = std::move(pairs.values);
  model.x_means = std::move(means);
  model.x_scales = Vector::Ones(p);
  return model;
}

double bair_cv_threshold(const Matrix& x, const Vector& y, const std::vector<double>& theta_grid,
                         Index q, int folds, std::uint64_t seed) {
  struct Pipeline {
    BaselineModel screen;
    predict::RegressionHead head;
  };
  const eval::CvFitFn fit_fn = [](const Matrix& x_train, const ResponseSet& y_train, double theta,
                                  Index q_components) -> std::any {
    Pipeline pipeline;
    pipeline.screen = bair_fit(x_train, y_train.values().col(0), theta, q_components);
    const Matrix z = transform(pipeline.screen, x_train);
    pipeline.head = predict::ols_fit(z, y_train.values());
    return pipeline;
  };
  const eval::CvScoreFn score_fn = [](const std::any& model, const Matrix& x_val,
                                      const ResponseSet& y_val) -> double {
    const auto& pipeline = std::any_cast<const Pipeline&>(model);
    const Matrix z = transform(pipeline.screen, x_val);
    return eval::mse(y_val.values(), predict::predict_regression(pipeline.head, z));
  };
  const eval::CvReport report = eval::kfold_cv(x, ResponseSet::regression(y), theta_grid, q,
                                               folds, seed, fit_fn, score_fn);
  return report.best_value;
}

BaselineModel pls_fit(const Matrix& x, const Matrix& y, Index q) {
  ensure_finite(x, "X");
  ensure_finite(y, "Y");
  if (x.rows() != y.rows()) {
    throw DimensionMismatch("X and Y disagree on the number of rows");
  }
  const Index p = x.cols();
  const Index k = y.cols();
  if (q < 1 || q > std::min(x.rows(), p)) {
    throw BadRank("q = " + std::to_string(q) + " out of range");
  }

  auto [xd, x_means] = linalg::center_columns(x);
  auto [yd, y_means] = linalg::center_columns(y);

  constexpr int kMaxInner = 500;
  constexpr double kTol = 1e-10;

  Matrix weights(p, q), loadings(p, q), y_loadings(k, q);
  for (Index a = 0; a < q; ++a) {
    // Start from the response column with the most remaining energy.
    Index start = 0;
    yd.colwise().squaredNorm().maxCoeff(&start);
    Vector u = yd.col(start);
    if (u.squaredNorm() == 0.0) {
      throw ConvergenceFailure("response deflated to zero before component " +
                               std::to_string(a + 1));
    }

    Vector w(p), t_scores, t_prev = Vector::Zero(x.rows());
    bool converged = false;
    for (int iter = 0; iter < kMaxInner; ++iter) {
      w = xd.transpose() * u;
      const double wn = w.norm();
      if (wn < 1e-14) {
        throw ConvergenceFailure("X deflated to zero; q exceeds the rank of X");
      }
      w /= wn;
      t_scores = xd * w;
      const double tt = t_scores.squaredNorm();
      if (tt == 0.0) {
        throw ConvergenceFailure("zero latent score at component " + std::to_string(a + 1));
      }
      if ((t_scores - t_prev).norm() <= kTol * t_scores.norm()) {
        converged = true;
        break;
      }
      t_prev = t_scores;
      const Vector c = yd.transpose() * t_scores / tt;
      const double cc = c.squaredNorm();
      if (cc == 0.0) {
        converged = true;  // response exhausted; the component is still valid
        break;
      }
      u = yd * c / cc;
    }
    if (!converged) {
      throw ConvergenceFailure("NIPALS inner loop hit the iteration cap at component " +
                               std::to_string(a + 1));
    }

    const double tt = t_scores.squaredNorm();
    const Vector p_a = xd.transpose() * t_scores / tt;
    const Vector c_a = yd.transpose() * t_scores / tt;
    xd.noalias() -= t_scores * p_a.transpose();
    yd.noalias() -= t_scores * c_a.transpose();
    weights.col(a) = w;
    loadings.col(a) = p_a;
    y_loadings.col(a) = c_a;
  }

  BaselineModel model;
  model.method = Method::kPls;
  model.w = std::move(weights);
  model.pls_loadings = std::move(loadings);
  // R = W (P^T W)^-1 reproduces the latent scores from undeflated data.
  const Matrix pw = model.pls_loadings.transpose() * model.w;
  model.pls_rotations = model.w * pw.inverse();
  model.pls_coefficients = model.pls_rotations * y_loadings.transpose();
  model.x_means = std::move(x_means);
  model.x_scales = Vector::Ones(p);
  model.y_means = std::move(y_means);
  return model;
}

BaselineModel lda_fit(const Matrix& x, const Vector& labels, std::optional<double> ridge) {
  ensure_finite(x, "X");
  if (x.rows() != labels.size()) {
    throw DimensionMismatch("X and labels disagree on the number of rows");
  }
  const Index n = x.rows();
  const Index p = x.cols();
  Index n1 = 0;
  for (Index i = 0; i < n; ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw NonBinaryLabels("label at row " + std::to_string(i) + " is not 0/1");
    }
    if (labels[i] == 1.0) ++n1;
  }
  if (n1 == 0 || n1 == n) throw OneClassOnly("LDA needs both classes present");

  Vector mean0 = Vector::Zero(p), mean1 = Vector::Zero(p);
  for (Index i = 0; i < n; ++i) {
    (labels[i] == 1.0 ? mean1 : mean0) += x.row(i).transpose();
  }
  mean0 /= static_cast<double>(n - n1);
  mean1 /= static_cast<double>(n1);

  Matrix scatter = Matrix::Zero(p, p);
  for (Index i = 0; i < n; ++i) {
    const Vector diff = x.row(i).transpose() - (labels[i] == 1.0 ? mean1 : mean0);
    scatter.noalias() += diff * diff.transpose();
  }

  const double gamma = ridge.value_or(1e-3 * scatter.trace() / static_cast<double>(p));
  if (gamma < 0.0) throw Error("ridge must be nonnegative");
  Vector direction;
  if (gamma == 0.0) {
    // LLT can slip past a merely rank-deficient PSD matrix, so inspect the
    // LDLT pivots instead.
    Eigen::LDLT<Matrix> ldlt(scatter);
    const Vector pivots = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success ||
        pivots.minCoeff() <= 1e-12 * std::max(pivots.maxCoeff(), 0.0)) {
      throw SingularScatter("within-class scatter is singular; set ridge > 0");
    }
    direction = ldlt.solve(mean1 - mean0);
  } else {
    Matrix regularized = scatter;
    regularized.diagonal().array() += gamma;
    Eigen::LLT<Matrix> llt(regularized);
    if (llt.info() != Eigen::Success) {
      throw SingularScatter("within-class scatter is numerically singular even with ridge");
    }
    direction = llt.solve(mean1 - mean0);
  }
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw SingularScatter("class means coincide; no discriminant direction");
  direction /= norm;

  BaselineModel model;
  model.method = Method::kLda;
  model.ridge = gamma;
  model.w = direction;
  model.x_means = x.colwise().mean();
  model.x_scales = Vector::Ones(p);
  return model;
}

Matrix transform(const BaselineModel& model, const Matrix& x_new) {
  const Matrix& projection = model.projection();
  if (x_new.cols() != projection.rows()) {
    throw DimensionMismatch("X_new has " + std::to_string(x_new.cols()) +
                            " columns; the model expects " + std::to_string(projection.rows()));
  }
  Matrix centered = x_new.rowwise() - model.x_means.transpose();
  centered.array().rowwise() /= model.x_scales.transpose().array();
  return centered * projection;
}

Matrix pls_predict(const BaselineModel& model, const Matrix& x_new) {
  if (model.method != Method::kPls) throw Error("pls_predict called on a non-PLS model");
  if (x_new.cols() != model.pls_coefficients.rows()) {
    throw DimensionMismatch("X_new has " + std::to_string(x_new.cols()) +
                            " columns; the model expects " +
                            std::to_string(model.pls_coefficients.rows()));
  }
  Matrix centered = x_new.rowwise() - model.x_means.transpose();
  centered.array().rowwise() /= model.x_scales.transpose().array();
  return (centered * model.pls_coefficients).rowwise() + model.y_means.transpose();
}

}  // namespace cspca::baselines
