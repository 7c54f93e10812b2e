#include "cspca/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace cspca::linalg {

namespace {

void require_nonempty(const Matrix& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error("matrix must have at least one row and one column");
  }
}

void require_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) {
    throw NotSymmetric("matrix is " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + ", not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > rel_tol * scale) {
    throw NotSymmetric("asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
}

// Flip columns so the first component with non-negligible magnitude is
// positive. Keeps eigenvector output stable across runs and platforms.
void apply_sign_convention(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    const double colmax = vectors.col(j).cwiseAbs().maxCoeff();
    if (colmax == 0.0) continue;
    const double tol = 1e-12 * colmax;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double v = vectors(i, j);
      if (std::abs(v) > tol) {
        if (v < 0.0) vectors.col(j) = -vectors.col(j);
        break;
      }
    }
  }
}

}  // namespace

std::pair<Matrix, Vector> center_columns(const Matrix& m) {
  require_nonempty(m);
  Vector means = m.colwise().mean();
  Matrix centered = m.rowwise() - means.transpose();
  return {std::move(centered), std::move(means)};
}

EigenPairs sym_eig_topq(const Matrix& a, Index q) {
  require_nonempty(a);
  require_symmetric(a, 1e-8);
  if (q < 1 || q > a.rows()) {
    throw BadRank("q = " + std::to_string(q) + " out of range for dimension " +
                  std::to_string(a.rows()));
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric eigendecomposition did not converge");
  }
  // Eigen sorts ascending; reverse to descending and keep the top q.
  EigenPairs out;
  out.values = solver.eigenvalues().reverse().head(q);
  out.vectors = solver.eigenvectors().rowwise().reverse().leftCols(q);
  apply_sign_convention(out.vectors);
  return out;
}

SvdResult svd(const Matrix& a) {
  require_nonempty(a);
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("SVD did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix pinv(const Matrix& a, double rank_tol) {
  require_nonempty(a);
  require_symmetric(a, 1e-8);
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric eigendecomposition did not converge");
  }
  const Vector& values = solver.eigenvalues();
  const double sigma_max = values.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(values.size());
  for (Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > rank_tol * sigma_max) {
      inv[i] = 1.0 / values[i];
    }
  }
  return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();
}

Matrix cholesky(const Matrix& a) {
  require_nonempty(a);
  require_symmetric(a, 1e-8);
  Eigen::LLT<Matrix> llt(0.5 * (a + a.transpose()));
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky pivot failure: matrix is not positive definite");
  }
  return llt.matrixL();
}

}  // namespace cspca::linalg
