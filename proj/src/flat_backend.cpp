#include "green/flat_backend.hpp"

#include <cmath>

#include "green/quadrature.hpp"
#include "green/special.hpp"

namespace green {

Cx Backend::phi_diag(const Coord&, double, const Energy&) const {
  throw GreenError(ErrorKind::Internal, "phi_diag is defined for renormalized backends only");
}

double effective_coupling(const Support& s, const BareCoupling& c) {
  return c.lambda / support_measure(s);
}

Cx g0_free(int dim, double r, const Energy& E, const Units& u) {
  const Cx kappa = E.kappa(u);
  const double pref = u.kernel_prefactor();
  switch (dim) {
    case 1:
      return pref * std::exp(-kappa * r) / (2.0 * kappa);
    case 2:
      if (r <= 0.0) throw GreenError(ErrorKind::SingularProbe, "coincident points in 2D kernel");
      return pref * special::bessel_k0(kappa * r) / (2.0 * M_PI);
    case 3:
      if (r <= 0.0) throw GreenError(ErrorKind::SingularProbe, "coincident points in 3D kernel");
      return pref * std::exp(-kappa * r) / (4.0 * M_PI * r);
    default:
      throw GreenError(ErrorKind::Internal, "unsupported dimension");
  }
}

FlatBackend::FlatBackend(ModelKind kind, Units units)
    : kind_(kind), units_(units), dim_(ambient_dim(kind)), renorm_(is_renormalized(kind)) {
  if (kind == ModelKind::PointsRenormTorus2D || kind == ModelKind::PointsRenormSphere2D)
    throw GreenError(ErrorKind::Internal, "manifold models use the heat backend");
}

Cx FlatBackend::g0_point(const Coord& x, const Coord& y, const Energy& E) const {
  return g0_free(dim_, dist(x, y), E, units_);
}

namespace {

Cx curve_field(const CurveSupport& c, const Coord& x, const Energy& E, const Units& u) {
  double dmin = 1e300;
  for (const Coord& p : c.nodes()) dmin = std::min(dmin, dist(x, p));
  if (dmin < 1e-6 * c.diameter())
    throw GreenError(ErrorKind::SingularProbe, "probe too close to a curve support");
  const double h = c.length() / c.order();
  Cx acc(0.0, 0.0);
  for (const Coord& p : c.nodes()) acc += g0_free(2, dist(x, p), E, u);
  return h * acc;
}

// Kussmaul-Martensen Nystrom rule for the logarithmically singular diagonal.
// Kernel split (z = kappa r):
//   K0(z) = -(1/2) I0(z) log(4 sin^2(D/2)) + M,
//   M = R(z) + I0(z) [log(4 |sin(D/2)| / r) - log(kappa)],  R = K0 + log(z/2) I0
// with the smooth-part diagonal limit M -> -gamma - log(kappa L / (4 pi)).
Cx curve_bilinear_diag(const CurveSupport& c, const Energy& E, const Units& u) {
  const Cx kappa = E.kappa(u);
  const double pref = u.kernel_prefactor();
  const int order = c.order();
  const int n = order / 2;
  const auto R = quad::log_weights(n);
  const auto& nodes = c.nodes();
  const double L = c.length();
  const Cx log_kappa = std::log(kappa);
  const Cx diag_smooth = Cx(-0.57721566490153286060651209008240, 0.0) -
                         (log_kappa + std::log(L / (4.0 * M_PI)));

  Cx outer(0.0, 0.0);
  for (int i = 0; i < order; ++i) {
    Cx inner(0.0, 0.0);
    for (int j = 0; j < order; ++j) {
      if (j == i) {
        inner += R[0] * Cx(-0.5, 0.0) + (M_PI / n) * diag_smooth;
        continue;
      }
      const double r = dist(nodes[i], nodes[j]);
      const Cx z = kappa * r;
      const Cx i0 = special::bessel_i0(z);
      const double sin_half = std::fabs(std::sin(0.5 * M_PI * (i - j) / n));
      const Cx m = special::k0_smooth_part(z) +
                   i0 * (std::log(4.0 * sin_half / r) - log_kappa);
      inner += R[std::abs(i - j) % (2 * n)] * (-0.5 * i0) + (M_PI / n) * m;
    }
    outer += inner;
  }
  // measure: ds ds' = (L / 2 pi)^2 dsigma dsigma'; outer trapezoid adds pi/n
  const double jac = (L / (2.0 * M_PI)) * (L / (2.0 * M_PI));
  return pref / (2.0 * M_PI) * jac * (M_PI / n) * outer;
}

Cx curve_bilinear_off(const CurveSupport& a, const CurveSupport& b, const Energy& E,
                      const Units& u) {
  const double ha = a.length() / a.order();
  const double hb = b.length() / b.order();
  Cx acc(0.0, 0.0);
  for (const Coord& p : a.nodes())
    for (const Coord& q : b.nodes()) acc += g0_free(2, dist(p, q), E, u);
  return ha * hb * acc;
}

Cx sphere_field(const SphereSupport& s, const Coord& x, const Energy& E, const Units& u) {
  const double rc = dist(x, s.center());
  if (std::fabs(rc - s.radius()) < 1e-6 * 2.0 * s.radius())
    throw GreenError(ErrorKind::SingularProbe, "probe too close to a sphere support");
  Cx acc(0.0, 0.0);
  const auto& nodes = s.nodes();
  const auto& w = s.weights();
  for (size_t i = 0; i < nodes.size(); ++i) acc += w[i] * g0_free(3, dist(x, nodes[i]), E, u);
  return acc;
}

// int_{|x-c|=a} e^{-kappa rho}/(4 pi rho) dS integrated against a second
// sphere, reduced to radial integrals. Stable for large |kappa| (all
// exponents have nonpositive real part).
Cx sphere_bilinear(const SphereSupport& s1, const SphereSupport& s2, bool same, const Energy& E,
                   const Units& u) {
  const Cx kappa = E.kappa(u);
  const double pref = u.kernel_prefactor();
  if (same) {
    const double R = s1.radius();
    return pref * 2.0 * M_PI * R * R * (1.0 - std::exp(-2.0 * kappa * R)) / kappa;
  }
  const double d = dist(s1.center(), s2.center());
  const double a1 = s1.radius(), a2 = s2.radius();
  if (d == 0.0) {
    const double lo = std::min(a1, a2), hi = std::max(a1, a2);
    // 4 pi a1 a2 e^{-kappa hi} sinh(kappa lo) / kappa, written overflow-safe
    return pref * 4.0 * M_PI * a1 * a2 *
           (std::exp(-kappa * (hi - lo)) - std::exp(-kappa * (hi + lo))) / (2.0 * kappa);
  }
  const double rlo = std::fabs(d - a1), rhi = d + a1;
  Cx radial;
  if (rlo >= a2) {
    // every point of sphere 1 sees sphere 2 from outside
    radial = (std::exp(-kappa * (rlo - a2)) - std::exp(-kappa * (rlo + a2)) -
              std::exp(-kappa * (rhi - a2)) + std::exp(-kappa * (rhi + a2))) /
             (2.0 * kappa * kappa);
  } else if (rhi <= a2) {
    // sphere 1 lies strictly inside sphere 2
    radial = (std::exp(kappa * (rhi - a2)) + std::exp(-kappa * (rhi + a2)) -
              std::exp(kappa * (rlo - a2)) - std::exp(-kappa * (rlo + a2))) /
             (2.0 * kappa * kappa);
  } else {
    throw GreenError(ErrorKind::Validation, "spheres intersect");
  }
  return pref * 2.0 * M_PI * a1 * a2 * radial / d;
}

}  // namespace

Cx FlatBackend::g0_field(const Support& v, const Coord& x, const Energy& E) const {
  if (const auto* p = std::get_if<PointSupport>(&v)) return g0_point(p->pos, x, E);
  if (const auto* c = std::get_if<CurveSupport>(&v)) return curve_field(*c, x, E, units_);
  return sphere_field(std::get<SphereSupport>(v), x, E, units_);
}

Cx FlatBackend::g0_bilinear(const Support& v, const Support& w, bool same, const Energy& E) const {
  if (const auto* p = std::get_if<PointSupport>(&v)) {
    const auto* q = std::get_if<PointSupport>(&w);
    if (!q) throw GreenError(ErrorKind::Internal, "mixed support kinds in a point model");
    if (same) {
      if (dim_ != 1)
        throw GreenError(ErrorKind::Internal, "bare point diagonal is finite in 1D only");
      return g0_free(1, 0.0, E, units_);
    }
    return g0_point(p->pos, q->pos, E);
  }
  if (const auto* c = std::get_if<CurveSupport>(&v)) {
    const auto* d = std::get_if<CurveSupport>(&w);
    if (!d) throw GreenError(ErrorKind::Internal, "mixed support kinds in a curve model");
    return same ? curve_bilinear_diag(*c, E, units_) : curve_bilinear_off(*c, *d, E, units_);
  }
  const auto& s1 = std::get<SphereSupport>(v);
  const auto* s2 = std::get_if<SphereSupport>(&w);
  if (!s2) throw GreenError(ErrorKind::Internal, "mixed support kinds in a surface model");
  return sphere_bilinear(s1, *s2, same, E, units_);
}

Cx FlatBackend::phi_diag(const Coord&, double mu, const Energy& E) const {
  if (!renorm_) return Backend::phi_diag(Coord{}, mu, E);
  const Cx kappa = E.kappa(units_);
  const double pref = units_.kernel_prefactor();
  if (dim_ == 2) return pref * std::log(kappa / mu) / (2.0 * M_PI);
  return pref * (kappa - mu) / (4.0 * M_PI);
}

}  // namespace green
