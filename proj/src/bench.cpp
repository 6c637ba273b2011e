#include "green/bench.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "green/engine.hpp"
#include "green/flat_backend.hpp"

namespace green {

double loglog_slope(const std::vector<std::pair<double, double>>& pts, double* residual) {
  const std::size_t m = pts.size();
  if (m < 2) throw GreenError(ErrorKind::Validation, "slope fit needs >= 2 sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, v] : pts) {
    const double x = std::log(n), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double icept = (sy - slope * sx) / m;
  if (residual) {
    double r2 = 0;
    for (const auto& [n, v] : pts) {
      const double e = std::log(v) - (icept + slope * std::log(n));
      r2 += e * e;
    }
    *residual = std::sqrt(r2 / m);
  }
  return slope;
}

BenchReport run_bench(std::uint64_t seed, int n_max, const Units& units) {
  if (n_max < 16) throw GreenError(ErrorKind::Validation, "bench needs n_max >= 16");
  BenchReport rep;
  rep.seed = seed;
  rep.n_max = n_max;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> lam(-1.0, -0.1);
  std::vector<Center> centers;
  centers.reserve(n_max);
  for (int i = 0; i < n_max; ++i)
    centers.push_back({PointSupport{make_coord(pos(rng))}, BareCoupling{lam(rng)}});

  ModelConfig cfg;
  cfg.kind = ModelKind::Points1D;
  cfg.units = units;
  cfg.centers = centers;
  validate_or_throw(cfg);

  auto backend = make_backend(cfg);
  const Energy E = Energy::bound_side(-1.0);

  std::vector<int> sizes;
  for (int n = 2; n <= n_max; n *= 2) sizes.push_back(n);
  if (sizes.size() < 4) throw GreenError(ErrorKind::Validation, "bench needs >= 4 sizes to fit");
  rep.rows.resize(sizes.size());

  auto tally = std::make_shared<Tally>();
  GreenState state = GreenState::init(backend, E, tally);
  rep.kernel_count_exact = true;
  std::size_t row = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < n_max; ++k) {
    const std::uint64_t kern_before = tally->kernel_evals, flop_before = tally->flops;
    state = state.extended(centers[k]);
    const std::uint64_t dk = tally->kernel_evals - kern_before;
    if (dk != static_cast<std::uint64_t>(k) + 1) rep.kernel_count_exact = false;
    if (row < sizes.size() && state.size() == sizes[row]) {
      BenchRow& r = rep.rows[row];
      r.n = sizes[row];
      r.extend_step_kernels = dk;
      r.extend_step_flops = tally->flops - flop_before;
      r.extend_cum_kernels = tally->kernel_evals;
      r.extend_cum_flops = tally->flops;
      r.extend_cum_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ++row;
    }
  }

  auto dtally = std::make_shared<Tally>();
  row = 0;
  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t kern_before = dtally->kernel_evals, flop_before = dtally->flops;
    const auto s0 = std::chrono::steady_clock::now();
    DirectSolver solver(backend, std::vector<Center>(centers.begin(), centers.begin() + n), E,
                        dtally);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
    if (row < sizes.size() && n == sizes[row]) {
      BenchRow& r = rep.rows[row];
      r.direct_step_kernels = dtally->kernel_evals - kern_before;
      r.direct_step_flops = dtally->flops - flop_before;
      r.direct_cum_kernels = dtally->kernel_evals;
      r.direct_cum_flops = dtally->flops;
      r.direct_step_seconds = secs;
      ++row;
    }
  }

  auto tail_fit = [&](auto field, double* resid) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows)
      if (r.n >= n_max / 4) pts.emplace_back(r.n, static_cast<double>(field(r)));
    return loglog_slope(pts, resid);
  };
  rep.slope_extend_step =
      tail_fit([](const BenchRow& r) { return r.extend_step_flops; }, &rep.fit_residual_extend);
  rep.slope_direct_step =
      tail_fit([](const BenchRow& r) { return r.direct_step_flops; }, &rep.fit_residual_direct);
  rep.slope_extend_cum = tail_fit([](const BenchRow& r) { return r.extend_cum_flops; }, nullptr);
  rep.slope_direct_cum = tail_fit([](const BenchRow& r) { return r.direct_cum_flops; }, nullptr);
  return rep;
}

}  // namespace green
