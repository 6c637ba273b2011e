#pragma once

#include <cstdint>
#include <vector>

#include "green/config.hpp"

namespace green {

struct BenchRow {
  int n = 0;  // chain size after this step
  std::uint64_t extend_step_kernels = 0;
  std::uint64_t extend_step_flops = 0;
  std::uint64_t extend_cum_kernels = 0;
  std::uint64_t extend_cum_flops = 0;
  std::uint64_t direct_step_kernels = 0;
  std::uint64_t direct_step_flops = 0;
  std::uint64_t direct_cum_kernels = 0;
  std::uint64_t direct_cum_flops = 0;
  double extend_cum_seconds = 0.0;
  double direct_step_seconds = 0.0;
};

struct BenchReport {
  std::uint64_t seed = 0;
  int n_max = 0;
  bool kernel_count_exact = false;  // every extend step cost exactly n+1 kernel evals
  double slope_extend_step = 0.0;   // ln flops vs ln n, tail fit
  double slope_direct_step = 0.0;
  double slope_extend_cum = 0.0;
  double slope_direct_cum = 0.0;
  double fit_residual_extend = 0.0;
  double fit_residual_direct = 0.0;
  std::vector<BenchRow> rows;  // at doubling sizes 2,4,...,n_max
};

// randomized 1D chain benchmark: couplings drawn repulsive so every extend
// denominator is provably pole free at E = -1
BenchReport run_bench(std::uint64_t seed, int n_max, const Units& units = {});

// ln-ln least-squares slope of (n, v) pairs
double loglog_slope(const std::vector<std::pair<double, double>>& pts, double* residual = nullptr);

}  // namespace green
