#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace cspca {

// Seeded random source used everywhere randomness is needed. The engine is
// std::mt19937_64, whose output sequence the standard pins down bit for bit;
// uniform and normal variates are derived with fixed arithmetic (53-bit
// mantissa scaling, Box-Muller) instead of std::*_distribution, so the same
// seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Box-Muller; generates pairs and caches the second.
  double normal();

  // Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<Eigen::Index> permutation(Eigen::Index n);

  // m distinct indices drawn uniformly from {0, ..., n-1}, in draw order.
  std::vector<Eigen::Index> sample_without_replacement(Eigen::Index n, Eigen::Index m);

 private:
  std::mt19937_64 gen_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Stateless mix for deriving independent sub-stream seeds (per rep, per
// fold, ...) from one user-facing seed. splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace cspca
