#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cspca/simdata.hpp"
#include "cspca/types.hpp"

namespace cspca::benchmark {

struct BenchmarkSpec {
  int suite = 1;  // simulation DGP 1, 2 or 3
  simdata::SimSpec::Design design = simdata::SimSpec::Design::kIid;
  double rho = 0.4;
  Index n = 100;
  Index p = 600;
  double noise_sd = 0.1;
  int reps = 50;
  std::vector<Index> qs{2, 4, 6, 8, 10};
  std::uint64_t seed = 0;
  int folds = 5;
  double test_frac = 0.2;
  std::vector<double> kappa_grid;  // empty -> default grid
  int threads = 0;                 // 0 -> worker_count()
};

struct BenchmarkRow {
  std::string method;  // pcr | pls | hsic | bair | cspca
  Index q = 0;
  int rep = 0;
  std::string metric;  // var_explained | mse | cov_explained
  double value = 0.0;
};

// One row per method x q x rep x metric, sorted by (method, q, rep, metric)
// regardless of how many workers ran the reps.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec);

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& path);

// CSPCA_THREADS when set (clamped to >= 1), hardware concurrency otherwise.
int worker_count();

}  // namespace cspca::benchmark
