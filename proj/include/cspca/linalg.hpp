#pragma once

#include <utility>

#include "cspca/types.hpp"

namespace cspca::linalg {

// Eigenvalues sorted non-increasing, vectors column-aligned and orthonormal.
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

struct SvdResult {
  Matrix u;
  Vector singular_values;  // descending
  Matrix v;
};

// Subtracts each column mean; returns the centered matrix and the means.
std::pair<Matrix, Vector> center_columns(const Matrix& m);

// Top q eigenpairs of a symmetric matrix, eigenvalues descending. Sign
// convention: the first component of each vector whose magnitude is
// non-negligible is made positive, so repeated runs and golden tests agree.
// Throws NotSymmetric (asymmetry > 1e-8 relative) or BadRank.
EigenPairs sym_eig_topq(const Matrix& a, Index q);

// Thin SVD. Throws ConvergenceFailure if the decomposition does not converge.
SvdResult svd(const Matrix& a);

// Moore-Penrose pseudoinverse of a symmetric PSD matrix. Eigenvalues below
// rank_tol * max|eigenvalue| are treated as zero.
Matrix pinv(const Matrix& a, double rank_tol = 1e-12);

// Lower-triangular L with L * L^T = A. Throws NotPositiveDefinite.
Matrix cholesky(const Matrix& a);

}  // namespace cspca::linalg
