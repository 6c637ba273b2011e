#include "green/heat.hpp"

#include <cmath>

#include "green/flat_backend.hpp"
#include "green/quadrature.hpp"
#include "green/special.hpp"

namespace green {

namespace {

// sum_n (4 pi a)^{-1/2} exp(-(dx + n L)^2 / (4a)); switches to the dual
// frequency sum at the theta modular point 4 pi a = L^2
double lattice_gauss_1d(double dx, double a, double L, double drop_tol) {
  if (4.0 * M_PI * a <= L * L) {
    const double norm = 1.0 / std::sqrt(4.0 * M_PI * a);
    double acc = 0.0;
    for (int n = 0;; ++n) {
      const double up = dx + n * L;
      const double dn = dx - (n + 1) * L;
      const double term = std::exp(-up * up / (4.0 * a)) + std::exp(-dn * dn / (4.0 * a));
      acc += term;
      if (n >= 1 && term < drop_tol * acc) break;
      if (n > 10000) throw GreenError(ErrorKind::Numerical, "image sum failed to converge");
    }
    return norm * acc;
  }
  double acc = 1.0;
  for (int k = 1;; ++k) {
    const double w = 2.0 * M_PI * k / L;
    const double term = 2.0 * std::exp(-a * w * w) * std::cos(w * dx);
    acc += term;
    if (std::exp(-a * w * w) < drop_tol * std::fabs(acc)) break;
    if (k > 10000) throw GreenError(ErrorKind::Numerical, "frequency sum failed to converge");
  }
  return acc / L;
}

// sum_l (2l+1) exp(-th l(l+1)) P_l(cos g) / (4 pi R^2)
double sphere_mode_sum(double gamma, double th, double R, const TruncationControl& ctl) {
  const double c = std::cos(gamma);
  double p_prev = 1.0, p_cur = c;
  double acc = std::exp(0.0) * 1.0;  // l = 0 term weight
  double wsum = 1.0;
  for (int l = 1;; ++l) {
    const double w = (2.0 * l + 1.0) * std::exp(-th * l * (l + 1.0));
    acc += w * p_cur;
    wsum += w;
    if (w < ctl.drop_tol * wsum && l >= 2) break;
    if (l >= ctl.max_l)
      throw GreenError(ErrorKind::Numerical,
                       "sphere mode sum hit the l cap before converging (separation too small "
                       "for this diffusion time)");
    const double p_next = ((2.0 * l + 1.0) * c * p_cur - l * p_prev) / (l + 1.0);
    p_prev = p_cur;
    p_cur = p_next;
  }
  return acc / (4.0 * M_PI * R * R);
}

}  // namespace

ManifoldSpec ManifoldSpec::flat(int dim) {
  if (dim < 1 || dim > 3) throw GreenError(ErrorKind::Validation, "flat manifold dim must be 1..3");
  ManifoldSpec m;
  m.kind_ = Kind::FlatRD;
  m.dim_ = dim;
  return m;
}

ManifoldSpec ManifoldSpec::torus(TorusGeometry g) {
  if (!(g.L1 > 0.0 && g.L2 > 0.0))
    throw GreenError(ErrorKind::Validation, "torus lengths must be positive");
  ManifoldSpec m;
  m.kind_ = Kind::Torus2D;
  m.dim_ = 2;
  m.torus_ = g;
  return m;
}

ManifoldSpec ManifoldSpec::sphere(SphereGeometry g) {
  if (!(g.R > 0.0)) throw GreenError(ErrorKind::Validation, "sphere radius must be positive");
  ManifoldSpec m;
  m.kind_ = Kind::Sphere2D;
  m.dim_ = 2;
  m.sphere_ = g;
  return m;
}

double ManifoldSpec::volume() const {
  switch (kind_) {
    case Kind::Torus2D: return torus_.L1 * torus_.L2;
    case Kind::Sphere2D: return 4.0 * M_PI * sphere_.R * sphere_.R;
    default: return std::numeric_limits<double>::infinity();
  }
}

double ManifoldSpec::distance(const Coord& x, const Coord& y) const {
  switch (kind_) {
    case Kind::Torus2D: return torus_distance(torus_, x, y);
    case Kind::Sphere2D: return sphere_geodesic(sphere_, x, y);
    default: return dist(x, y);
  }
}

double ManifoldSpec::heat_kernel(double a, const Coord& x, const Coord& y,
                                 const TruncationControl& ctl) const {
  if (!(a > 0.0)) throw GreenError(ErrorKind::Validation, "diffusion time must be positive");
  switch (kind_) {
    case Kind::FlatRD: {
      const double d = dist(x, y);
      return std::pow(4.0 * M_PI * a, -0.5 * dim_) * std::exp(-d * d / (4.0 * a));
    }
    case Kind::Torus2D: {
      const double s1 = lattice_gauss_1d(x[0] - y[0], a, torus_.L1, ctl.drop_tol);
      const double s2 = lattice_gauss_1d(x[1] - y[1], a, torus_.L2, ctl.drop_tol);
      return s1 * s2;
    }
    case Kind::Sphere2D: {
      const double R = sphere_.R;
      const double th = a / (R * R);
      const double gamma = sphere_geodesic(sphere_, x, y) / R;
      if (gamma == 0.0 && th < 1e-3) {
        // diagonal small-time expansion of the mode sum
        const double s = 1.0 + th / 3.0 + th * th / 15.0 + 4.0 * th * th * th / 315.0 +
                         std::pow(th, 4) / 315.0 + 4.0 * std::pow(th, 5) / 3465.0;
        return s / (4.0 * M_PI * R * R * th);
      }
      if (gamma > 0.0 && gamma * gamma / (4.0 * th) > 1.4 * ctl.tail_log) return 0.0;
      return sphere_mode_sum(gamma, th, R, ctl);
    }
  }
  throw GreenError(ErrorKind::Internal, "unreachable");
}

namespace {

// shared split-time quadrature: integral of f(t) over [t_min, t_max] with
// t = u^2 on (., 1] and t = 1/s beyond. noise_floor bounds the absolute
// rounding noise of the integrand; without it a nearly-cancelling integrand
// drives the relative target below what the evaluations can support.
template <class F>
Cx split_time_integral(F&& f, double t_min, double t_max, double tol, double noise_floor = 0.0) {
  Cx coarse(0.0, 0.0);
  const double ta = std::min(1.0, t_max);
  const bool has_a = t_min < ta;
  const bool has_b = t_max > std::max(1.0, t_min);
  auto fu = [&](double u) { return 2.0 * u * f(u * u); };
  auto fs = [&](double s) { return f(1.0 / s) / (s * s); };
  const double ulo = std::sqrt(std::max(t_min, 0.0)), uhi = std::sqrt(ta);
  const double slo = 1.0 / t_max, shi = 1.0 / std::max(1.0, t_min);
  if (has_a) coarse += quad::integrate_gl(fu, ulo, uhi, 32);
  if (has_b) coarse += quad::integrate_gl(fs, slo, shi, 32);
  const double abs_tol = tol * std::abs(coarse) + noise_floor + 1e-280;
  Cx acc(0.0, 0.0);
  if (has_a) acc += quad::integrate_adaptive(fu, ulo, uhi, abs_tol);
  if (has_b) acc += quad::integrate_adaptive(fs, slo, shi, abs_tol);
  return acc;
}

}  // namespace

Cx g0_from_heat(const ManifoldSpec& man, const Coord& x, const Coord& y, const Energy& E,
                const Units& u, const TruncationControl& ctl) {
  if (!(E.value().real() < 0.0))
    throw GreenError(ErrorKind::Validation, "heat-kernel route requires Re E < 0");
  const double hbar = u.hbar, dc = u.diffusivity();
  const double d = man.distance(x, y);
  const double t_min = d > 0.0 ? d * d / (4.0 * dc * ctl.tail_log) : 0.0;
  const double t_max = ctl.tail_log * hbar / -E.value().real();
  if (t_min >= t_max) return Cx(0.0, 0.0);
  const Cx e_over_h = E.value() / hbar;
  auto f = [&](double t) { return man.heat_kernel(dc * t, x, y, ctl) * std::exp(t * e_over_h) / hbar; };
  return split_time_integral(f, t_min, t_max, ctl.tol);
}

Cx phi_diag_renorm(const ManifoldSpec& man, const Coord& a, double mu, const Energy& E,
                   const Units& u, const TruncationControl& ctl) {
  if (!(E.value().real() < 0.0))
    throw GreenError(ErrorKind::Validation, "heat-kernel route requires Re E < 0");
  if (!(mu > 0.0)) throw GreenError(ErrorKind::Validation, "mu must be positive");
  const double hbar = u.hbar, dc = u.diffusivity();
  const double rate_mu = dc * mu * mu;  // E_mu / hbar
  const double rate_e = -E.value().real() / hbar;
  const double t_max = ctl.tail_log / std::min(rate_mu, rate_e);
  const Cx e_over_h = E.value() / hbar;
  auto f = [&](double t) {
    return man.heat_kernel(dc * t, a, a, ctl) *
           (std::exp(-t * rate_mu) - std::exp(t * e_over_h)) / hbar;
  };
  // near E = -E_mu the subtracted exponentials cancel to rounding level while
  // each factor stays O(1); 1e-13 of the kernel prefactor bounds that noise
  const double noise_floor = 1e-13 * u.kernel_prefactor();
  return split_time_integral(f, 0.0, t_max, ctl.tol, noise_floor);
}

HeatBackend::HeatBackend(ManifoldSpec man, Units units, TruncationControl ctl)
    : man_(std::move(man)), units_(units), ctl_(ctl) {}

int HeatBackend::dim() const {
  switch (man_.kind()) {
    case ManifoldSpec::Kind::FlatRD: return man_.dim();
    case ManifoldSpec::Kind::Torus2D: return 2;
    case ManifoldSpec::Kind::Sphere2D: return 3;  // ambient coordinates
  }
  return 0;
}

Cx HeatBackend::g0_point(const Coord& x, const Coord& y, const Energy& E) const {
  const double scale = man_.compact() ? std::sqrt(man_.volume()) : 1.0;
  if (man_.distance(x, y) < 1e-9 * scale)
    throw GreenError(ErrorKind::SingularProbe, "coincident points on the manifold");
  return g0_from_heat(man_, x, y, E, units_, ctl_);
}

Cx HeatBackend::g0_field(const Support& v, const Coord& x, const Energy& E) const {
  const auto* p = std::get_if<PointSupport>(&v);
  if (!p) throw GreenError(ErrorKind::Internal, "manifold models admit point supports only");
  return g0_point(p->pos, x, E);
}

Cx HeatBackend::g0_bilinear(const Support& v, const Support& w, bool same,
                            const Energy& E) const {
  if (same)
    throw GreenError(ErrorKind::Internal,
                     "diagonal bilinear is undefined for renormalized point supports");
  const auto* p = std::get_if<PointSupport>(&v);
  const auto* q = std::get_if<PointSupport>(&w);
  if (!p || !q) throw GreenError(ErrorKind::Internal, "manifold models admit point supports only");
  return g0_point(p->pos, q->pos, E);
}

Cx HeatBackend::phi_diag(const Coord& a, double mu, const Energy& E) const {
  return phi_diag_renorm(man_, a, mu, E, units_, ctl_);
}

std::shared_ptr<const Backend> make_backend(const ModelConfig& cfg) {
  switch (cfg.kind) {
    case ModelKind::PointsRenormTorus2D:
      if (!cfg.torus) throw GreenError(ErrorKind::Validation, "missing torus geometry");
      return std::make_shared<HeatBackend>(ManifoldSpec::torus(*cfg.torus), cfg.units);
    case ModelKind::PointsRenormSphere2D:
      if (!cfg.sphere) throw GreenError(ErrorKind::Validation, "missing sphere geometry");
      return std::make_shared<HeatBackend>(ManifoldSpec::sphere(*cfg.sphere), cfg.units);
    default:
      return std::make_shared<FlatBackend>(cfg.kind, cfg.units);
  }
}

}  // namespace green
