#include <doctest.h>

#include <cmath>

#include "green/flat_backend.hpp"

using namespace green;

namespace {

const Units kUnits{};

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("free Green's function closed forms at kappa = 1") {
  const Energy e = Energy::bound_side(-1.0);
  CHECK(rel(g0_free(1, 0.0, e, kUnits), 0.5) <= 1e-15);
  CHECK(rel(g0_free(2, 1.0, e, kUnits), 0.421024438240708333335627379213 / (2.0 * M_PI)) <= 1e-14);
  CHECK(rel(g0_free(3, 1.0, e, kUnits), 0.367879441171442321595523770161 / (4.0 * M_PI)) <= 1e-14);
}

TEST_CASE("free Green's function is positive and decreasing on the bound side") {
  const Energy e = Energy::bound_side(-2.0);
  for (int d : {1, 2, 3}) {
    double prev = 1e300;
    for (double r : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const Cx g = g0_free(d, r, e, kUnits);
      CHECK(g.imag() == 0.0);
      CHECK(g.real() > 0.0);
      CHECK(g.real() < prev);
      prev = g.real();
    }
  }
}

TEST_CASE("free Green's function scales with units") {
  Units u;
  u.hbar = 2.0;
  u.mass2 = 3.0;
  const Energy e = Energy::bound_side(-1.5);
  const Cx kap = e.kappa(u);
  const Cx g = g0_free(3, 0.8, e, u);
  const Cx expect = (u.mass2 / (u.hbar * u.hbar)) * std::exp(-kap * 0.8) / (4.0 * M_PI * 0.8);
  CHECK(rel(g, expect) <= 1e-14);
}

TEST_CASE("1d kernel solves the resolvent equation away from the source") {
  const FlatBackend b(ModelKind::Points1D, kUnits);
  const Energy e = Energy::bound_side(-2.25);
  const double x = 0.7, h = 1e-3;
  auto u = [&](double t) { return b.g0_point(make_coord(t), make_coord(0.0), e).real(); };
  const double upp = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
  const double resid = -upp - (-2.25) * u(x);
  CHECK(std::abs(resid) <= 1e-6 * std::abs(2.25 * u(x)));
}

TEST_CASE("complex probe energies keep the principal branch") {
  const Energy e = Energy::complex_probe(Cx(-1.0, 0.5));
  const Cx kap = e.kappa(kUnits);
  CHECK(kap.real() > 0.0);
  CHECK(rel(g0_free(1, 0.0, e, kUnits), 1.0 / (2.0 * kap)) <= 1e-14);
  const FlatBackend b(ModelKind::Points1D, kUnits);
  CHECK(rel(b.g0_point(make_coord(0.3), make_coord(-0.2), e),
            std::exp(-kap * 0.5) / (2.0 * kap)) <= 1e-13);
}

TEST_CASE("point kernel is symmetric") {
  const FlatBackend b(ModelKind::PointsRenorm3DFlat, kUnits);
  const Energy e = Energy::complex_probe(Cx(-1.0, 0.3));
  const Coord x = make_coord(0.1, -0.4, 0.9), y = make_coord(-1.0, 0.2, 0.0);
  CHECK(rel(b.g0_point(x, y, e), b.g0_point(y, x, e)) <= 1e-15);
}

TEST_CASE("coincident probes are singular in 2d and 3d") {
  const Energy e = Energy::bound_side(-1.0);
  const Coord p = make_coord(0.3, 0.4);
  const FlatBackend b2(ModelKind::PointsRenorm2DFlat, kUnits);
  CHECK_THROWS_AS(b2.g0_point(p, p, e), GreenError);
  const FlatBackend b3(ModelKind::PointsRenorm3DFlat, kUnits);
  CHECK_THROWS_AS(b3.g0_point(make_coord(1, 2, 3), make_coord(1, 2, 3), e), GreenError);
  try {
    b2.g0_point(p, p, e);
  } catch (const GreenError& err) {
    CHECK(err.kind() == ErrorKind::SingularProbe);
  }
}

TEST_CASE("circle diagonal bilinear matches the Bessel product") {
  const FlatBackend b(ModelKind::Curves2DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Support c64 = make_circle(0.0, 0.0, 1.0, 64);
  const Support c128 = make_circle(0.0, 0.0, 1.0, 128);
  const Cx d64 = b.g0_bilinear(c64, c64, true, e);
  const Cx d128 = b.g0_bilinear(c128, c128, true, e);
  CHECK(rel(d64, 3.34921846975554547716326663086) <= 1e-6);
  CHECK(rel(d64, d128) <= 1e-7);
}

TEST_CASE("circle field values self-converge away from the curve") {
  const FlatBackend b(ModelKind::Curves2DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Coord probe = make_coord(3.0, 0.5);
  const Cx f64 = b.g0_field(make_circle(0.0, 0.0, 1.0, 64), probe, e);
  const Cx f256 = b.g0_field(make_circle(0.0, 0.0, 1.0, 256), probe, e);
  CHECK(rel(f64, f256) <= 1e-10);
}

TEST_CASE("probes on the curve itself are rejected") {
  const FlatBackend b(ModelKind::Curves2DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  CHECK_THROWS_AS(b.g0_field(make_circle(0.0, 0.0, 1.0, 64), make_coord(1.0, 0.0), e),
                  GreenError);
}

TEST_CASE("curve cross bilinears are symmetric") {
  const FlatBackend b(ModelKind::Curves2DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Support a = make_circle(0.0, 0.0, 1.0, 48);
  const Support c = make_circle(3.0, 0.2, 0.7, 48);
  CHECK(rel(b.g0_bilinear(a, c, false, e), b.g0_bilinear(c, a, false, e)) <= 1e-13);
}

TEST_CASE("sphere field at the origin") {
  const FlatBackend b(ModelKind::Surfaces3DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Cx f = b.g0_field(make_sphere(make_coord(0, 0, 0), 1.0, 16), make_coord(0, 0, 0), e);
  CHECK(rel(f, 0.367879441171442321595523770161) <= 1e-12);
}

TEST_CASE("sphere diagonal bilinear closed form") {
  const FlatBackend b(ModelKind::Surfaces3DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Support s = make_sphere(make_coord(0, 0, 0), 1.0, 16);
  CHECK(rel(b.g0_bilinear(s, s, true, e), 5.43284864400431382004704204414) <= 1e-6);
}

TEST_CASE("disjoint sphere cross bilinear agrees with node quadrature") {
  const FlatBackend b(ModelKind::Surfaces3DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const SphereSupport sa = make_sphere(make_coord(0, 0, 0), 1.0, 16);
  const SphereSupport sb = make_sphere(make_coord(4.0, 0, 0), 1.5, 16);
  const Cx closed = b.g0_bilinear(sa, sb, false, e);

  Cx quad = 0.0;
  const auto nodes = sb.nodes();
  const auto w = sb.weights();
  for (std::size_t j = 0; j < nodes.size(); ++j) quad += w[j] * b.g0_field(sa, nodes[j], e);
  CHECK(rel(closed, quad) <= 1e-8);

  // exterior reduction of both spheres, written out independently
  const double kap = 1.0, d = 4.0;
  const double expect = (4.0 * M_PI * 1.0 * std::sinh(kap * 1.0) / kap) *
                        (4.0 * M_PI * 1.5 * std::sinh(kap * 1.5) / kap) *
                        std::exp(-kap * d) / (4.0 * M_PI * d);
  CHECK(rel(closed, expect) <= 1e-12);
}

TEST_CASE("intersecting spheres have no bilinear") {
  const FlatBackend b(ModelKind::Surfaces3DFlat, kUnits);
  const Energy e = Energy::bound_side(-1.0);
  const Support sa = make_sphere(make_coord(0, 0, 0), 1.0, 8);
  const Support sb = make_sphere(make_coord(1.0, 0, 0), 1.0, 8);
  try {
    b.g0_bilinear(sa, sb, false, e);
    CHECK(false);
  } catch (const GreenError& err) {
    CHECK(err.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("renormalized diagonal closed forms") {
  const Coord a = make_coord(0.0, 0.0, 0.0);
  const FlatBackend b2(ModelKind::PointsRenorm2DFlat, kUnits);
  CHECK(rel(b2.phi_diag(a, 1.0, Energy::bound_side(-4.0)),
            0.110317800076325796698228216059) <= 1e-13);
  CHECK(std::abs(b2.phi_diag(a, 2.0, Energy::bound_side(-4.0))) <= 1e-15);

  const FlatBackend b3(ModelKind::PointsRenorm3DFlat, kUnits);
  CHECK(rel(b3.phi_diag(a, 1.0, Energy::bound_side(-4.0)),
            0.0795774715459476678844418816863) <= 1e-13);
}

TEST_CASE("effective coupling divides by the support measure") {
  CHECK(effective_coupling(PointSupport{make_coord(0.0)}, BareCoupling{2.0}) == 2.0);
  const CurveSupport circ = make_circle(0.0, 0.0, 1.0, 16);
  CHECK(effective_coupling(circ, BareCoupling{2.0}) ==
        doctest::Approx(2.0 / (2.0 * M_PI)).epsilon(1e-14));
  const SphereSupport sph = make_sphere(make_coord(0, 0, 0), 2.0, 8);
  CHECK(effective_coupling(sph, BareCoupling{3.0}) ==
        doctest::Approx(3.0 / (16.0 * M_PI)).epsilon(1e-14));
}
