#include "green/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "green/bench.hpp"
#include "green/engine.hpp"
#include "green/flat_backend.hpp"
#include "green/heat.hpp"
#include "green/quadrature.hpp"
#include "green/special.hpp"
#include "green/spectrum.hpp"

namespace green {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

class PerturbedBackend : public Backend {
 public:
  PerturbedBackend(std::shared_ptr<const Backend> base, double eps)
      : base_(std::move(base)), eps_(eps) {}
  int dim() const override { return base_->dim(); }
  bool renormalized() const override { return base_->renormalized(); }
  const Units& units() const override { return base_->units(); }
  Cx g0_point(const Coord& x, const Coord& y, const Energy& E) const override {
    return base_->g0_point(x, y, E);
  }
  Cx g0_field(const Support& v, const Coord& x, const Energy& E) const override {
    return base_->g0_field(v, x, E);
  }
  Cx g0_bilinear(const Support& v, const Support& w, bool same, const Energy& E) const override {
    return base_->g0_bilinear(v, w, same, E) * (1.0 + eps_);
  }
  Cx phi_diag(const Coord& a, double mu, const Energy& E) const override {
    return base_->phi_diag(a, mu, E);
  }

 private:
  std::shared_ptr<const Backend> base_;
  double eps_;
};

double bisect(const std::function<double(double)>& f, double a, double b, double width) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw GreenError(ErrorKind::Numerical, "bisection bracket has no sign change");
  for (int it = 0; it < 200 && (b - a) > width; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<Center> random_points_1d(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> lam(0.1, 5.0);
  std::vector<Center> cs;
  cs.reserve(n);
  for (int i = 0; i < n; ++i) cs.push_back({PointSupport{make_coord(pos(rng))}, BareCoupling{lam(rng)}});
  return cs;
}

CriterionResult c01_recursion_vs_direct(const SelfcheckOptions& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> kap(0.5, 3.0), probe(-12.0, 12.0);
  double worst = 0.0;
  for (int cfg = 0; cfg < 20; ++cfg) {
    const std::vector<Center> centers = random_points_1d(rng, 50);
    const double k = kap(rng);
    const Energy E = Energy::bound_side(-k * k);
    std::shared_ptr<const Backend> clean =
        std::make_shared<FlatBackend>(ModelKind::Points1D, Units{});
    std::shared_ptr<const Backend> rec_backend = clean;
    if (o.kernel_perturbation != 0.0)
      rec_backend = std::make_shared<PerturbedBackend>(clean, o.kernel_perturbation);
    GreenState s = GreenState::init(rec_backend, E);
    for (const Center& c : centers) s = s.extended(c);
    DirectSolver direct(clean, centers, E);
    for (int p = 0; p < 10; ++p) {
      const Coord x = make_coord(probe(rng)), y = make_coord(probe(rng));
      const Cx gr = s.evaluate(x, y), gd = direct.evaluate(x, y);
      worst = std::max(worst, std::abs(gr - gd) / std::abs(gd));
    }
  }
  const double el = seconds_since(t0);
  const bool pass = worst <= 1e-10 && el < 5.0;
  return {1, "recursion_vs_direct_1d",
          pass, "max rel diff " + fmt(worst) + ", " + fmt(el) + " s"};
}

CriterionResult c02_permutation_invariance(const SelfcheckOptions& o) {
  std::mt19937_64 rng(o.seed ^ 0x2545f4914f6cdd1dULL);
  std::uniform_real_distribution<double> kap(0.5, 3.0), probe(-12.0, 12.0);
  auto backend = std::make_shared<FlatBackend>(ModelKind::Points1D, Units{});
  double worst = 0.0;
  for (int cfg = 0; cfg < 10; ++cfg) {
    std::vector<Center> centers = random_points_1d(rng, 8);
    const double k = kap(rng);
    const Energy E = Energy::bound_side(-k * k);
    std::vector<std::pair<Coord, Coord>> probes;
    for (int p = 0; p < 10; ++p)
      probes.emplace_back(make_coord(probe(rng)), make_coord(probe(rng)));
    std::vector<Cx> ref;
    for (int order = 0; order < 5; ++order) {
      GreenState s = GreenState::init(backend, E);
      for (const Center& c : centers) s = s.extended(c);
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const Cx g = s.evaluate(probes[p].first, probes[p].second);
        if (order == 0)
          ref.push_back(g);
        else
          worst = std::max(worst, std::abs(g - ref[p]) / std::abs(ref[p]));
      }
      std::shuffle(centers.begin(), centers.end(), rng);
    }
  }
  return {2, "permutation_invariance", worst <= 1e-10, "max rel diff " + fmt(worst)};
}

CriterionResult c03_single_center_1d(const SelfcheckOptions&) {
  auto backend = std::make_shared<FlatBackend>(ModelKind::Points1D, Units{});
  const std::vector<Center> cs = {{PointSupport{make_coord(0.0)}, BareCoupling{2.0}}};
  auto f = [&](double E) { return char_value(*backend, cs, E); };
  const double root = bisect(f, -9.0, -1e-3, 1e-14);
  const double err = std::fabs(root + 1.0);
  return {3, "single_center_bound_state_1d", err <= 1e-12, "|E + 1| = " + fmt(err)};
}

CriterionResult c04_symmetric_pair_1d(const SelfcheckOptions&) {
  auto backend = std::make_shared<FlatBackend>(ModelKind::Points1D, Units{});
  const std::vector<Center> cs = {{PointSupport{make_coord(-0.5)}, BareCoupling{4.0}},
                                  {PointSupport{make_coord(0.5)}, BareCoupling{4.0}}};
  const SpectralScan scan = find_bound_states(backend, cs);
  // independent scalar oracle: kappa = 2 +- 2 e^{-kappa}
  const double kp = bisect([](double k) { return k - 2.0 - 2.0 * std::exp(-k); }, 2.0, 2.5, 1e-13);
  const double km = bisect([](double k) { return k - 2.0 + 2.0 * std::exp(-k); }, 1.0, 2.0, 1e-13);
  const double e_deep = -kp * kp, e_shallow = -km * km;
  if (scan.roots.size() != 2)
    return {4, "symmetric_pair_bound_states_1d", false,
            "expected 2 roots, got " + std::to_string(scan.roots.size())};
  const double err = std::max(std::fabs(scan.roots[0].energy - e_deep),
                              std::fabs(scan.roots[1].energy - e_shallow));
  return {4, "symmetric_pair_bound_states_1d", err <= 1e-8, "max |dE| = " + fmt(err)};
}

CriterionResult c05_renorm_flat_2d(const SelfcheckOptions&) {
  const ManifoldSpec man = ManifoldSpec::flat(2);
  const Units u{};
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0})
    for (double nu : {0.5, 1.0, 2.0}) {
      const Cx q = phi_diag_renorm(man, make_coord(0.0, 0.0), mu, Energy::bound_side(-nu * nu), u,
                                   TruncationControl{});
      const double closed = std::log(nu / mu) / (2.0 * M_PI);
      worst = std::max(worst, std::abs(q - closed));
    }
  auto backend = std::make_shared<FlatBackend>(ModelKind::PointsRenorm2DFlat, Units{});
  const std::vector<Center> cs = {{PointSupport{make_coord(0.0, 0.0)}, RenormCoupling{1.0}}};
  const SpectralScan scan = find_bound_states(backend, cs);
  double root_err = 1.0;
  if (scan.roots.size() == 1) root_err = std::fabs(scan.roots[0].energy + 1.0);
  const bool pass = worst <= 1e-9 && root_err <= 1e-8;
  return {5, "renorm_flat_2d", pass,
          "max |dPhi| = " + fmt(worst) + ", |E + mu^2| = " + fmt(root_err)};
}

CriterionResult c06_renorm_flat_3d(const SelfcheckOptions&) {
  const ManifoldSpec man = ManifoldSpec::flat(3);
  const Units u{};
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0})
    for (double nu : {0.5, 1.0, 2.0}) {
      const Cx q = phi_diag_renorm(man, make_coord(0.0, 0.0, 0.0), mu,
                                   Energy::bound_side(-nu * nu), u, TruncationControl{});
      const double closed = (nu - mu) / (4.0 * M_PI);
      worst = std::max(worst, std::abs(q - closed));
    }
  return {6, "renorm_flat_3d", worst <= 1e-9, "max |dPhi| = " + fmt(worst)};
}

CriterionResult c07_closed_form_bilinears(const SelfcheckOptions&) {
  const Energy E = Energy::bound_side(-1.0);
  FlatBackend curves(ModelKind::Curves2DFlat, Units{});
  const Support circle = make_circle(0.0, 0.0, 1.0, 64);
  const Cx bc = curves.g0_bilinear(circle, circle, true, E);
  const double circle_oracle = 2.0 * M_PI * special::bessel_i0(1.0) * special::bessel_k0(1.0);
  const double rel_c = std::abs(bc - circle_oracle) / circle_oracle;

  FlatBackend surf(ModelKind::Surfaces3DFlat, Units{});
  const Support sph = make_sphere(make_coord(0.0, 0.0, 0.0), 1.0, 16);
  const Cx bs = surf.g0_bilinear(sph, sph, true, E);
  const double sphere_oracle = 2.0 * M_PI * (1.0 - std::exp(-2.0));
  const double rel_s = std::abs(bs - sphere_oracle) / sphere_oracle;

  const bool pass = rel_c <= 1e-6 && rel_s <= 1e-6;
  return {7, "closed_form_bilinears", pass,
          "circle rel " + fmt(rel_c) + ", sphere rel " + fmt(rel_s)};
}

CriterionResult c08_heat_consistency(const SelfcheckOptions&) {
  const Units u{};
  const TruncationControl ctl{};
  double worst_flat = 0.0;
  for (int d : {2, 3})
    for (double r : {0.5, 1.0, 2.0})
      for (double ev : {-1.0, -4.0}) {
        const Energy E = Energy::bound_side(ev);
        const Coord x = make_coord(0.0, 0.0, 0.0);
        const Coord y = d == 2 ? make_coord(r, 0.0) : make_coord(0.0, r, 0.0);
        const Cx heat = g0_from_heat(ManifoldSpec::flat(d), x, y, E, u, ctl);
        const Cx closed = g0_free(d, r, E, u);
        worst_flat = std::max(worst_flat, std::abs(heat - closed) / std::abs(closed));
      }

  const ManifoldSpec torus = ManifoldSpec::torus({1.0, 1.3});
  const Coord tx = make_coord(0.13, 0.41), ty = make_coord(0.52, 0.11);
  auto torus_int = [&](auto&& f) {
    auto inner = [&](double zx) {
      return quad::integrate_gl([&](double zy) { return f(make_coord(zx, zy)); }, 0.0, 1.3, 96);
    };
    return quad::integrate_gl(inner, 0.0, 1.0, 96);
  };
  const double t_norm = torus_int([&](const Coord& z) { return torus.heat_kernel(0.05, tx, z, ctl); });
  const double t_semi_lhs =
      torus_int([&](const Coord& z) {
        return torus.heat_kernel(0.1, tx, z, ctl) * torus.heat_kernel(0.2, z, ty, ctl);
      });
  const double t_semi_rhs = torus.heat_kernel(0.3, tx, ty, ctl);
  const double torus_norm_err = std::fabs(t_norm - 1.0);
  const double torus_semi_err = std::fabs(t_semi_lhs - t_semi_rhs) / std::fabs(t_semi_rhs);
  const double t_flat = torus.heat_kernel(1e-3, tx, tx, ctl);
  const double torus_flat_err = std::fabs(t_flat * (4.0 * M_PI * 1e-3) - 1.0);

  const ManifoldSpec sph = ManifoldSpec::sphere({1.0});
  const Coord sx = make_coord(0.0, 0.0, 1.0);
  const Coord sy = make_coord(std::sin(1.0), 0.0, std::cos(1.0));
  auto sphere_int = [&](auto&& f) {
    auto inner = [&](double ct) {
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const int nphi = 256;
      double acc = 0.0;
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * M_PI * k / nphi;
        acc += f(make_coord(st * std::cos(ph), st * std::sin(ph), ct));
      }
      return acc * (2.0 * M_PI / nphi);
    };
    return quad::integrate_gl(inner, -1.0, 1.0, 128);
  };
  const double s_norm = sphere_int([&](const Coord& z) { return sph.heat_kernel(0.05, sx, z, ctl); });
  const double s_semi_lhs = sphere_int([&](const Coord& z) {
    return sph.heat_kernel(0.1, sx, z, ctl) * sph.heat_kernel(0.2, z, sy, ctl);
  });
  const double s_semi_rhs = sph.heat_kernel(0.3, sx, sy, ctl);
  const double sphere_norm_err = std::fabs(s_norm - 1.0);
  const double sphere_semi_err = std::fabs(s_semi_lhs - s_semi_rhs) / std::fabs(s_semi_rhs);
  // curvature pushes the diagonal off the flat value by a/3R^2, so the flat
  // limit is checked at a small enough that that term is below tolerance
  const double s_flat = sph.heat_kernel(1e-9, sx, sx, ctl);
  const double sphere_flat_err = std::fabs(s_flat * (4.0 * M_PI * 1e-9) - 1.0);

  const bool pass = worst_flat <= 1e-10 && torus_norm_err <= 1e-10 && sphere_norm_err <= 1e-10 &&
                    torus_semi_err <= 1e-8 && sphere_semi_err <= 1e-8 &&
                    torus_flat_err <= 1e-8 && sphere_flat_err <= 1e-8;
  return {8, "heat_kernel_consistency", pass,
          "flat " + fmt(worst_flat) + ", norm " + fmt(std::max(torus_norm_err, sphere_norm_err)) +
              ", semigroup " + fmt(std::max(torus_semi_err, sphere_semi_err)) + ", flat-limit " +
              fmt(std::max(torus_flat_err, sphere_flat_err))};
}

CriterionResult c09_complexity(const SelfcheckOptions& o) {
  const auto t0 = Clock::now();
  const BenchReport rep = run_bench(o.seed, 256);
  const double el = seconds_since(t0);
  const bool pass = rep.kernel_count_exact && std::fabs(rep.slope_extend_step - 2.0) <= 0.3 &&
                    std::fabs(rep.slope_direct_step - 3.0) <= 0.3 && el < 30.0;
  return {9, "complexity_counts", pass,
          std::string("kernel counts ") + (rep.kernel_count_exact ? "exact" : "WRONG") +
              ", step slopes " + fmt(rep.slope_extend_step) + "/" + fmt(rep.slope_direct_step) +
              ", cumulative " + fmt(rep.slope_extend_cum) + "/" + fmt(rep.slope_direct_cum) +
              ", " + fmt(el) + " s"};
}

CriterionResult c10_concentric_circles(const SelfcheckOptions&) {
  auto backend = std::make_shared<FlatBackend>(ModelKind::Curves2DFlat, Units{});
  const Energy E = Energy::bound_side(-1.0);
  const std::vector<Center> cs = {{make_circle(0.0, 0.0, 1.0, 64), BareCoupling{0.8}},
                                  {make_circle(0.0, 0.0, 2.0, 128), BareCoupling{-0.5}}};
  GreenState s = GreenState::init(backend, E);
  for (const Center& c : cs) s = s.extended(c);
  DirectSolver direct(backend, cs, E);
  const std::pair<Coord, Coord> probes[5] = {
      {make_coord(0.3, 0.1), make_coord(0.2, -0.4)},
      {make_coord(1.5, 0.0), make_coord(0.0, 1.4)},
      {make_coord(3.0, 0.5), make_coord(-2.6, 0.2)},
      {make_coord(0.5, 0.0), make_coord(1.6, 0.3)},
      {make_coord(2.5, 0.0), make_coord(0.3, 0.2)}};
  double worst = 0.0;
  for (const auto& [x, y] : probes) {
    const Cx gr = s.evaluate(x, y), gd = direct.evaluate(x, y);
    worst = std::max(worst, std::abs(gr - gd) / std::abs(gd));
  }
  return {10, "concentric_circles_cross_check", worst <= 1e-8, "max rel diff " + fmt(worst)};
}

CriterionResult c11_renorm_recursion(const SelfcheckOptions&) {
  auto backend = std::make_shared<FlatBackend>(ModelKind::PointsRenorm2DFlat, Units{});
  const std::vector<Center> cs = {{PointSupport{make_coord(-1.0, 0.0)}, RenormCoupling{1.0}},
                                  {PointSupport{make_coord(1.0, 0.0)}, RenormCoupling{1.0}}};
  const Energy E = Energy::bound_side(-2.7);
  GreenState s = GreenState::init(backend, E);
  for (const Center& c : cs) s = s.extended(c);
  DirectSolver direct(backend, cs, E);
  const std::pair<Coord, Coord> probes[5] = {
      {make_coord(0.3, 0.2), make_coord(-0.4, 0.7)},
      {make_coord(2.0, 1.0), make_coord(-2.0, 0.5)},
      {make_coord(0.0, 1.5), make_coord(0.0, -1.5)},
      {make_coord(-1.0, 1.0), make_coord(1.0, -1.0)},
      {make_coord(0.5, 0.0), make_coord(3.0, 0.4)}};
  double worst = 0.0;
  for (const auto& [x, y] : probes) {
    const Cx gr = s.evaluate(x, y), gd = direct.evaluate(x, y);
    worst = std::max(worst, std::abs(gr - gd) / std::abs(gd));
  }

  // pole agreement: zero of the one-to-two-center extension denominator vs
  // the zero of the smallest eigenvalue of the two-center Phi
  auto denom = [&](double Ev) {
    GreenState one = GreenState::init(backend, Energy::bound_side(Ev)).extended(cs[0]);
    return one.denominator(cs[1]).real();
  };
  auto smallest = [&](double Ev) { return char_value(*backend, cs, Ev); };
  const double e_denom = bisect(denom, -1.6, -1.05, 1e-12);
  const double e_det = bisect(smallest, -1.6, -1.05, 1e-12);
  const double pole_err = std::fabs(e_denom - e_det);

  const bool pass = worst <= 1e-9 && pole_err <= 1e-8;
  return {11, "renorm_recursion_cross_check", pass,
          "max rel diff " + fmt(worst) + ", pole |dE| = " + fmt(pole_err)};
}

}  // namespace

std::vector<CriterionResult> run_selfcheck(const SelfcheckOptions& opts,
                                           const std::vector<int>& only) {
  using Fn = CriterionResult (*)(const SelfcheckOptions&);
  static const Fn fns[] = {c01_recursion_vs_direct, c02_permutation_invariance,
                           c03_single_center_1d,    c04_symmetric_pair_1d,
                           c05_renorm_flat_2d,      c06_renorm_flat_3d,
                           c07_closed_form_bilinears, c08_heat_consistency,
                           c09_complexity,          c10_concentric_circles,
                           c11_renorm_recursion};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(fns)); ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      out.push_back(fns[id - 1](opts));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion_" + std::to_string(id), false,
                     std::string("exception: ") + e.what()});
    }
  }
  return out;
}

}  // namespace green
