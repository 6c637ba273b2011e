#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "green/bench.hpp"
#include "green/engine.hpp"
#include "green/io.hpp"
#include "green/parallel.hpp"
#include "green/selfcheck.hpp"
#include "green/spectrum.hpp"

namespace {

using namespace green;

Energy energy_from(const Cx& e) {
  return e.imag() == 0.0 ? Energy::bound_side(e) : Energy::complex_probe(e);
}

int run_eval(const RunConfig& rc, const std::string& format, const std::string& out) {
  if (!rc.energy)
    throw GreenError(ErrorKind::Validation, "eval needs an \"energy\" section in the config");
  if (rc.probes.empty())
    throw GreenError(ErrorKind::Validation, "eval needs a non-empty \"probes\" array");
  const Energy E = energy_from(*rc.energy);
  auto backend = make_backend(rc.model);
  GreenState state = GreenState::init(backend, E);
  for (const Center& c : rc.model.centers) state = state.extended(c);

  struct Row {
    Cx g{};
    std::string status = "ok";
    bool failed = false;
  };
  std::vector<Row> rows(rc.probes.size());
  parallel_for(rc.probes.size(), [&](std::size_t i) {
    try {
      rows[i].g = state.evaluate(rc.probes[i].x, rc.probes[i].y);
    } catch (const GreenError& e) {
      rows[i].failed = true;
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      rows[i].status = msg;
    }
  });

  Table t;
  t.meta = {{"command", str_cell("eval")},
            {"model", str_cell(model_kind_name(rc.model.kind))},
            {"n_centers", int_cell(static_cast<long long>(rc.model.centers.size()))},
            {"energy_re", num_cell(rc.energy->real())},
            {"energy_im", num_cell(rc.energy->imag())}};
  t.columns = {"x1", "x2", "x3", "y1", "y2", "y3", "re_g", "im_g", "status"};
  bool any_failed = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& p = rc.probes[i];
    std::vector<Cell> row = {num_cell(p.x[0]), num_cell(p.x[1]), num_cell(p.x[2]),
                             num_cell(p.y[0]), num_cell(p.y[1]), num_cell(p.y[2])};
    if (rows[i].failed) {
      any_failed = true;
      row.push_back({std::string(), true});
      row.push_back({std::string(), true});
    } else {
      row.push_back(num_cell(rows[i].g.real()));
      row.push_back(num_cell(rows[i].g.imag()));
    }
    row.push_back(str_cell(rows[i].status));
    t.rows.push_back(std::move(row));
  }
  write_output(t, format, out);
  return any_failed ? 2 : 0;
}

int run_bound_states(const RunConfig& rc, const std::string& format, const std::string& out) {
  auto backend = make_backend(rc.model);
  const SpectralScan scan = find_bound_states(backend, rc.model.centers, rc.scan);
  Table t;
  t.meta = {{"command", str_cell("bound-states")},
            {"model", str_cell(model_kind_name(rc.model.kind))},
            {"n_centers", int_cell(static_cast<long long>(rc.model.centers.size()))},
            {"e_lo", num_cell(scan.e_lo)},
            {"e_hi", num_cell(scan.e_hi)},
            {"grid", int_cell(scan.grid)},
            {"tol", num_cell(scan.tol)}};
  t.columns = {"energy", "multiplicity", "residual", "at_edge"};
  for (const BoundState& b : scan.roots)
    t.rows.push_back({num_cell(b.energy), int_cell(b.multiplicity), num_cell(b.residual),
                      str_cell(b.at_edge ? "true" : "false")});
  write_output(t, format, out);
  return 0;
}

int run_bench_cmd(const RunConfig& rc, std::uint64_t seed, const std::string& format,
                  const std::string& out) {
  if (rc.model.kind != ModelKind::Points1D)
    throw GreenError(ErrorKind::Validation, "bench requires model kind points_1d");
  const BenchReport rep = run_bench(seed, rc.bench_n_max, rc.model.units);
  Table t;
  t.meta = {{"command", str_cell("bench")},
            {"seed", int_cell(static_cast<long long>(rep.seed))},
            {"n_max", int_cell(rep.n_max)},
            {"kernel_count_exact", str_cell(rep.kernel_count_exact ? "true" : "false")},
            {"slope_extend_step", num_cell(rep.slope_extend_step)},
            {"slope_direct_step", num_cell(rep.slope_direct_step)},
            {"slope_extend_cum", num_cell(rep.slope_extend_cum)},
            {"slope_direct_cum", num_cell(rep.slope_direct_cum)},
            {"fit_residual_extend", num_cell(rep.fit_residual_extend)},
            {"fit_residual_direct", num_cell(rep.fit_residual_direct)}};
  t.columns = {"n",
               "extend_step_kernels",
               "extend_step_flops",
               "extend_cum_kernels",
               "extend_cum_flops",
               "direct_step_kernels",
               "direct_step_flops",
               "direct_cum_kernels",
               "direct_cum_flops",
               "extend_cum_seconds",
               "direct_step_seconds"};
  for (const BenchRow& r : rep.rows)
    t.rows.push_back({int_cell(r.n),
                      int_cell(static_cast<long long>(r.extend_step_kernels)),
                      int_cell(static_cast<long long>(r.extend_step_flops)),
                      int_cell(static_cast<long long>(r.extend_cum_kernels)),
                      int_cell(static_cast<long long>(r.extend_cum_flops)),
                      int_cell(static_cast<long long>(r.direct_step_kernels)),
                      int_cell(static_cast<long long>(r.direct_step_flops)),
                      int_cell(static_cast<long long>(r.direct_cum_kernels)),
                      int_cell(static_cast<long long>(r.direct_cum_flops)),
                      num_cell(r.extend_cum_seconds),
                      num_cell(r.direct_step_seconds)});
  write_output(t, format, out);
  return 0;
}

int run_selfcheck_cmd(std::uint64_t seed, const std::string& format, const std::string& out) {
  SelfcheckOptions opts;
  opts.seed = seed;
  if (const char* env = std::getenv("GREEN_SELFCHECK_PERTURB"))
    opts.kernel_perturbation = std::strtod(env, nullptr);
  const std::vector<CriterionResult> results = run_selfcheck(opts);
  Table t;
  t.meta = {{"command", str_cell("selfcheck")},
            {"seed", int_cell(static_cast<long long>(opts.seed))},
            {"kernel_perturbation", num_cell(opts.kernel_perturbation)}};
  t.columns = {"id", "name", "pass", "detail"};
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    all_pass = all_pass && r.pass;
    t.rows.push_back({int_cell(r.id), str_cell(r.name), str_cell(r.pass ? "pass" : "FAIL"),
                      str_cell(r.detail)});
  }
  write_output(t, format, out);
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green's functions of Schrodinger operators with delta interactions"};
  app.require_subcommand(1);

  std::string config_path, format = "csv", out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* copt = sub->add_option("--config", config_path, "path to the JSON config");
    if (config_required) copt->required();
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--seed", seed, "seed for randomized commands")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate G(x,y) on the configured probes");
  add_common(eval, true);
  CLI::App* bound = app.add_subcommand("bound-states", "scan for det Phi(E) = 0 roots");
  add_common(bound, true);
  CLI::App* bench = app.add_subcommand("bench", "extend-chain vs direct-rebuild cost counts");
  add_common(bench, true);
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the acceptance criteria suite");
  add_common(selfcheck, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (selfcheck->parsed()) return run_selfcheck_cmd(seed_given ? seed : 12345, format, out_path);
    const RunConfig rc = load_config(config_path);
    if (eval->parsed()) return run_eval(rc, format, out_path);
    if (bound->parsed()) return run_bound_states(rc, format, out_path);
    if (bench->parsed()) {
      std::uint64_t s = 12345;
      if (rc.bench_seed) s = *rc.bench_seed;
      if (seed_given) s = seed;
      return run_bench_cmd(rc, s, format, out_path);
    }
    return 3;
  } catch (const GreenError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Validation: return 1;
      case ErrorKind::SingularProbe:
      case ErrorKind::PoleDenominator:
      case ErrorKind::IllConditioned:
      case ErrorKind::Numerical: return 2;
      default: return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
