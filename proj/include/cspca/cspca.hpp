#pragma once

#include <cstdint>
#include <functional>

#include "cspca/types.hpp"

namespace cspca {

// How the top-q eigenvectors of the objective matrix are obtained.
struct SolverSpec {
  enum class Kind { kExact, kNystrom };

  Kind kind = Kind::kExact;
  Index m = 0;             // Nystrom landmark count; 0 means ceil(sqrt(p))
  std::uint64_t seed = 0;  // Nystrom column-sampling seed

  static SolverSpec exact() { return {}; }
  static SolverSpec nystrom(Index m, std::uint64_t seed) {
    return {Kind::kNystrom, m, seed};
  }
};

struct FitOptions {
  // Scale centered columns to unit variance and remember the scales.
  bool standardize = false;
  // Double-center the delta kernel (H * D * H). Off by default; with
  // centered features both forms produce the same objective.
  bool center_delta = false;
  // QR re-orthonormalization of the Nystrom output columns. Off by default:
  // the extension yields unit-normalized but not mutually orthogonal columns.
  bool orthonormalize_nystrom = false;
};

// A fitted projection: W plus everything needed to apply it to new data.
struct ProjectionModel {
  Matrix w;              // p x q
  double kappa = 0.0;
  Index q = 0;
  Task task = Task::kRegression;
  SolverSpec solver;
  Vector x_means;        // length p
  Vector x_scales;       // length p; all ones unless standardized
  Vector y_means;        // length k for regression, empty for classification
  Vector eigenvalues;    // top-q of C (exact) or of the Nystrom surrogate
};

// n x n label-agreement kernel: D_ij = 1 iff labels_i == labels_j.
// Labels must be 0/1; throws NonBinaryLabels otherwise.
Matrix delta_kernel(const Vector& labels);

// Objective matrix on centered inputs:
//   regression:      C = Xc^T Yc Yc^T Xc + kappa Xc^T Xc
//   classification:  C = Xc^T D  Xc      + kappa Xc^T Xc
// The supervised term is assembled from its low-rank factor, so the n x n
// kernel is never materialized; the value matches the dense formula.
Matrix build_objective(const Matrix& xc, const ResponseSet& response, double kappa,
                       bool center_delta = false);

struct NystromResult {
  Matrix vectors;     // p x q' unit-norm approximate eigenvectors
  Vector eigenvalues; // q' surrogate eigenvalues (eigenvalues of C_m)
  bool truncated = false;  // fewer than q columns survived the cutoff
};

// Approximate top-q eigenvectors of a symmetric PSD p x p matrix known only
// through a column oracle. Samples m distinct columns uniformly without
// replacement (seeded), eigendecomposes the m x m intersection block, and
// extends: U ~= S U_m Lambda_m^{-1/2}, each kept column rescaled to unit
// norm. Surrogate eigenvalues below 1e-10 * max are dropped before the
// inversion; if fewer than q survive, throws RankDeficient unless
// allow_fewer is set, in which case the result is truncated and flagged.
NystromResult nystrom_eigvecs(const std::function<Vector(Index)>& column_oracle,
                              Index p, Index m, std::uint64_t seed, Index q,
                              bool allow_fewer = false);

// Centers X (and Y for regression), builds the objective, and solves for W.
// The exact solver eigendecomposes the full p x p objective; the Nystrom
// solver generates sampled columns on demand and never forms it.
ProjectionModel fit(const Matrix& x, const ResponseSet& response, Index q, double kappa,
                    const SolverSpec& solver = SolverSpec::exact(),
                    const FitOptions& options = {});

// Z = (X_new - 1 * x_means^T) * W, with stored scales applied when the model
// was fitted on standardized features.
Matrix transform(const ProjectionModel& model, const Matrix& x_new);

}  // namespace cspca
