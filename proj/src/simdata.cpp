#include "cspca/simdata.hpp"

#include <cmath>

#include "cspca/linalg.hpp"
#include "cspca/rng.hpp"

namespace cspca::simdata {

Matrix toeplitz_sigma(Index p, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Error("rho must lie in (0,1)");
  }
  Matrix sigma(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      sigma(i, j) = std::pow(rho, std::abs(static_cast<double>(i - j)));
    }
  }
  return sigma;
}

Matrix gen_design(const SimSpec& spec) {
  if (spec.n < 1 || spec.p < 1) throw Error("n and p must be positive");
  Rng rng(spec.seed);
  Matrix x(spec.n, spec.p);
  for (Index i = 0; i < spec.n; ++i) {
    for (Index j = 0; j < spec.p; ++j) {
      x(i, j) = rng.normal();
    }
  }
  if (spec.design == SimSpec::Design::kToeplitz) {
    // Rows become N(0, Sigma) through x_i <- L x_i with Sigma = L L^T.
    // The AR(1) Toeplitz matrix is positive definite for rho in (0,1).
    const Matrix l = linalg::cholesky(toeplitz_sigma(spec.p, spec.rho));
    x = x * l.transpose();
  }
  return x;
}

Vector gen_response(const Matrix& x, int dgp, double noise_sd, std::uint64_t seed) {
  if (x.cols() < 3) throw Error("response generators reference the first three features");
  if (dgp < 1 || dgp > 3) throw Error("dgp must be 1, 2 or 3");
  if (!(noise_sd >= 0.0)) throw Error("noise_sd must be nonnegative");

  const Index n = x.rows();
  Rng rng(seed);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    const double x1 = x(i, 0), x2 = x(i, 1), x3 = x(i, 2);
    double signal = 0.0;
    switch (dgp) {
      case 1:
        signal = 3.0 * x1 - 5.0 * x2 + 4.0 * x3;
        break;
      case 2:
        signal = std::exp(x1) + 3.0 * std::sin(x2) - 4.0 * x3;
        break;
      case 3:
        signal = 2.0 * x1 - 0.5 * x1 * x1 + 3.0 * x2 + 4.0 * std::exp(x3 + 1.0);
        break;
    }
    y[i] = signal + noise_sd * rng.normal();
  }
  return y;
}

std::pair<std::vector<Index>, std::vector<Index>> train_test_split(Index n, double test_frac,
                                                                   std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) throw Error("test_frac must lie in (0,1)");
  const auto n_test = static_cast<Index>(std::llround(static_cast<double>(n) * test_frac));
  const std::vector<Index> perm = Rng(seed).permutation(n);
  std::vector<Index> test(perm.begin(), perm.begin() + n_test);
  std::vector<Index> train(perm.begin() + n_test, perm.end());
  return {std::move(train), std::move(test)};
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& idx) {
  Matrix out(static_cast<Index>(idx.size()), m.cols());
  for (Index i = 0; i < out.rows(); ++i) {
    out.row(i) = m.row(idx[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace cspca::simdata
