#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cspca/types.hpp"

namespace cspca::simdata {

struct SimSpec {
  enum class Design { kIid, kToeplitz };

  Index n = 100;
  Index p = 600;
  Design design = Design::kIid;
  double rho = 0.4;       // Toeplitz only, in (0,1)
  int dgp = 1;            // 1, 2 or 3
  double noise_sd = 0.1;
  std::uint64_t seed = 0;
};

// Sigma_ij = rho^|i-j|.
Matrix toeplitz_sigma(Index p, double rho);

// IID: entries i.i.d. N(0,1). Toeplitz: rows i.i.d. N(0, Sigma) via the
// Cholesky factor of Sigma. Fully determined by the spec's seed.
Matrix gen_design(const SimSpec& spec);

// dgp 1: 3 X1 - 5 X2 + 4 X3 + eps
// dgp 2: exp(X1) + 3 sin(X2) - 4 X3 + eps
// dgp 3: 2 X1 - X1^2 / 2 + 3 X2 + 4 exp(X3 + 1) + eps
// with eps ~ N(0, noise_sd^2).
Vector gen_response(const Matrix& x, int dgp, double noise_sd, std::uint64_t seed);

// Seeded permutation split; test size = round(n * test_frac).
std::pair<std::vector<Index>, std::vector<Index>> train_test_split(Index n, double test_frac,
                                                                   std::uint64_t seed);

Matrix take_rows(const Matrix& m, const std::vector<Index>& idx);

}  // namespace cspca::simdata
