#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cspca/types.hpp"

namespace cspca::baselines {

enum class Method { kPca, kHsic, kBair, kPls, kLda };

std::string method_name(Method method);

struct KernelSpec {
  enum class Kind { kRbf, kDelta };
  Kind kind = Kind::kRbf;
  double sigma = 0.0;   // 0 means the median pairwise-distance heuristic
  bool center = false;  // double-center the kernel (H K H)

  static KernelSpec rbf(double sigma = 0.0) { return {Kind::kRbf, sigma, false}; }
  static KernelSpec delta() { return {Kind::kDelta, 0.0, false}; }
};

struct BaselineModel {
  Method method = Method::kPca;
  Matrix w;            // p x q loadings (PCA/HSIC/Bair orthonormal; LDA one unit column)
  Vector eigenvalues;  // objective eigenvalues where the method has them
  Vector x_means;
  Vector x_scales;     // all ones unless the caller standardized
  // Objective spectrum is numerically zero, so the loadings are an
  // arbitrary orthonormal basis (e.g. all-ones kernel on centered data).
  bool degenerate_spectrum = false;

  // Bair
  double theta = 0.0;
  std::vector<Index> kept_features;

  // HSIC
  KernelSpec kernel;
  double sigma_used = 0.0;

  // LDA
  double ridge = 0.0;

  // PLS: w holds the orthonormal X-weights; scores for prediction come from
  // the rotations R = W (P^T W)^-1 so that Z = Xc R reproduces the NIPALS
  // latent scores without deflating new data.
  Matrix pls_loadings;    // p x q
  Matrix pls_rotations;   // p x q
  Matrix pls_coefficients;  // p x k regression coefficients on centered data
  Vector y_means;

  // Matrix multiplied against centered data to obtain scores.
  const Matrix& projection() const {
    return method == Method::kPls ? pls_rotations : w;
  }
};

// Top-q principal loadings of the centered data.
BaselineModel pca_fit(const Matrix& x, Index q);

// K_ij = exp(-||y_i - y_j||^2 / (2 sigma^2)).
Matrix rbf_kernel(const Matrix& y, double sigma);

double median_pairwise_distance(const Matrix& y);

// Top-q eigenvectors of Xc^T K Xc with K a kernel of the responses.
BaselineModel hsic_spca_fit(const Matrix& x, const ResponseSet& response, Index q,
                            const KernelSpec& kernel);

// Two-stage screening: keep features whose standardized univariate
// coefficient beta_j = x_j^T y / sqrt(x_j^T x_j) exceeds theta in absolute
// value, then PCA on the survivors. Loadings are embedded back into p rows.
BaselineModel bair_fit(const Matrix& x, const Vector& y, double theta, Index q);

// Cross-validated threshold choice; same fold skeleton as eval::kfold_cv
// with theta in place of kappa, scored by held-out MSE.
double bair_cv_threshold(const Matrix& x, const Vector& y, const std::vector<double>& theta_grid,
                         Index q, int folds, std::uint64_t seed);

// NIPALS PLS2 with X-deflation and regression-based Y-deflation.
// Inner-loop cap 500 iterations at tolerance 1e-10.
BaselineModel pls_fit(const Matrix& x, const Matrix& y, Index q);

// Fisher discriminant direction (S_w + ridge I)^-1 (M_1 - M_0), unit-normalized.
// ridge = nullopt picks 1e-3 * trace(S_w) / p; an explicit 0 demands a
// nonsingular within-class scatter and throws SingularScatter otherwise.
BaselineModel lda_fit(const Matrix& x, const Vector& labels,
                      std::optional<double> ridge = std::nullopt);

// Scores for new data: (X - 1 mu^T) ./ scales * projection().
Matrix transform(const BaselineModel& model, const Matrix& x_new);

// Native PLS prediction from the stored regression coefficients.
Matrix pls_predict(const BaselineModel& model, const Matrix& x_new);

}  // namespace cspca::baselines
