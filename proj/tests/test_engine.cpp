#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "green/engine.hpp"
#include "green/flat_backend.hpp"
#include "green/heat.hpp"

using namespace green;

namespace {

std::shared_ptr<const Backend> flat(ModelKind k) {
  return std::make_shared<FlatBackend>(k, Units{});
}

Center point1d(double x, double lam) {
  return Center{PointSupport{make_coord(x)}, BareCoupling{lam}};
}

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

std::vector<Center> random_line(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> jit(-0.3, 0.3), lam(0.1, 1.0);
  std::vector<Center> cs;
  for (int i = 0; i < n; ++i)
    cs.push_back(point1d(-9.5 + i * 19.0 / (n - 1) + jit(rng), -lam(rng)));
  return cs;
}

GreenState chain(std::shared_ptr<const Backend> b, const std::vector<Center>& cs, Energy e,
                 std::shared_ptr<Tally> tally = nullptr) {
  GreenState s = GreenState::init(std::move(b), e, std::move(tally));
  for (const auto& c : cs) s = s.extended(c);
  return s;
}

}  // namespace

TEST_CASE("empty state reproduces the free kernel") {
  const auto s = GreenState::init(flat(ModelKind::Points1D), Energy::bound_side(-1.0));
  CHECK(rel(s.evaluate(make_coord(0.0), make_coord(0.0)), 0.5) <= 1e-15);
  CHECK(s.size() == 0);
}

TEST_CASE("single attractive point, value worked out by hand") {
  // G0 = 1/4 at kappa = 2; G = G0 + 2 G0^2 / (1 - 2 G0) = 1/2
  const Energy e = Energy::bound_side(-4.0);
  const auto b = flat(ModelKind::Points1D);
  const auto s = GreenState::init(b, e).extended(point1d(0.0, 2.0));
  CHECK(rel(s.evaluate(make_coord(0.0), make_coord(0.0)), 0.5) <= 1e-14);
  CHECK(rel(direct_green(b, {point1d(0.0, 2.0)}, e, make_coord(0.0), make_coord(0.0)), 0.5) <=
        1e-14);
}

TEST_CASE("extension exactly at the bound state is a pole") {
  const auto s = GreenState::init(flat(ModelKind::Points1D), Energy::bound_side(-1.0));
  const Center c = point1d(0.0, 2.0);  // 1 - lambda G0 = 1 - 2/2 = 0
  CHECK(std::abs(s.denominator(c)) <= 1e-15);
  try {
    s.extended(c);
    CHECK(false);
  } catch (const GreenError& err) {
    CHECK(err.kind() == ErrorKind::PoleDenominator);
  }
}

TEST_CASE("zero coupling extends to an inert center") {
  const Energy e = Energy::bound_side(-2.0);
  const auto s0 = GreenState::init(flat(ModelKind::Points1D), e);
  const auto s1 = s0.extended(point1d(0.4, 0.0));
  CHECK(s1.size() == 1);
  const Coord x = make_coord(-1.0), y = make_coord(2.0);
  CHECK(s0.evaluate(x, y) == s1.evaluate(x, y));
  CHECK(std::abs(s1.denominator(point1d(-0.4, 0.0)) - 1.0) <= 1e-15);
}

TEST_CASE("bordering recursion agrees with the direct factorization") {
  std::mt19937_64 rng(41);
  const std::vector<Energy> probes = {Energy::complex_probe(Cx(-1.3, 0.7)),
                                      Energy::complex_probe(Cx(-0.4, -1.1)),
                                      Energy::bound_side(-2.0)};
  const auto b = flat(ModelKind::Points1D);
  for (int rep = 0; rep < 3; ++rep) {
    const auto cs = random_line(rng, 20);
    const Energy e = probes[rep];
    const auto s = chain(b, cs, e);
    const DirectSolver d(b, cs, e);
    for (auto [px, py] : {std::pair{0.33, -0.77}, {5.5, 2.25}, {-11.0, 11.0}}) {
      const Coord x = make_coord(px), y = make_coord(py);
      CHECK(rel(s.evaluate(x, y), d.evaluate(x, y)) <= 1e-10);
    }
  }
}

TEST_CASE("the weight matrix inverts the principal matrix") {
  std::mt19937_64 rng(7);
  const auto cs = random_line(rng, 12);
  const Energy e = Energy::bound_side(-2.0);
  const auto b = flat(ModelKind::Points1D);
  const auto s = chain(b, cs, e);
  const Eigen::MatrixXcd phi = build_principal_matrix(*b, cs, e);
  const double err = (s.weights() * phi - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff();
  CHECK(err <= 1e-10);
}

TEST_CASE("states are immutable and their kernels symmetric") {
  const Energy e = Energy::bound_side(-1.5);
  const auto b = flat(ModelKind::Points1D);
  const auto s1 = chain(b, {point1d(-1.0, 0.8), point1d(0.5, 1.2)}, e);
  const Coord x = make_coord(0.2), y = make_coord(3.0);
  const Cx before = s1.evaluate(x, y);
  const auto s2 = s1.extended(point1d(2.0, 0.3));
  CHECK(s1.evaluate(x, y) == before);
  CHECK(s1.size() == 2);
  CHECK(s2.size() == 3);
  CHECK(rel(s2.evaluate(x, y), s2.evaluate(y, x)) <= 1e-13);
  const auto& w = s2.weights();
  CHECK((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("extension order does not change the result") {
  const Energy e = Energy::complex_probe(Cx(-1.0, 0.5));
  const auto b = flat(ModelKind::Points1D);
  const std::vector<Center> cs = {point1d(-2.0, 1.5), point1d(0.0, 0.7), point1d(1.3, 2.2)};
  const auto s_fwd = chain(b, cs, e);
  const auto s_rev = chain(b, {cs[2], cs[0], cs[1]}, e);
  const Coord x = make_coord(0.4), y = make_coord(-0.9);
  CHECK(rel(s_fwd.evaluate(x, y), s_rev.evaluate(x, y)) <= 1e-12);
}

TEST_CASE("renormalized center reduces to the explicit rank-one form") {
  // D_r = (kappa - mu)/4pi with no other centers
  const Energy e = Energy::bound_side(-4.0);
  const auto b = flat(ModelKind::PointsRenorm3DFlat);
  const Coord a = make_coord(0.0, 0.0, 0.0);
  const auto s = GreenState::init(b, e).extended(Center{PointSupport{a}, RenormCoupling{1.0}});
  const Coord x = make_coord(0.5, 0.0, 0.0), y = make_coord(0.0, 0.7, 0.0);
  const Cx expect = b->g0_point(x, y, e) +
                    b->g0_point(x, a, e) * b->g0_point(a, y, e) * (4.0 * M_PI);
  CHECK(rel(s.evaluate(x, y), expect) <= 1e-12);
  CHECK(rel(direct_green(b, s.centers(), e, x, y), expect) <= 1e-12);
}

TEST_CASE("bordered bilinears pass through the weight matrix") {
  const Energy e = Energy::bound_side(-1.0);
  const auto b = flat(ModelKind::Curves2DFlat);
  const CurveSupport circ = make_circle(0.0, 0.0, 1.0, 64);
  const Cx b0 = b->g0_bilinear(circ, circ, true, e);
  // coupling chosen so the denominator is exactly 1/2 and <v|G|v> = 2 B0
  const double c = 0.5 / b0.real();
  const auto s =
      GreenState::init(b, e).extended(Center{circ, BareCoupling{c * circ.length()}});
  CHECK(rel(s.bilinear(circ, circ, true), 2.0 * b0) <= 1e-12);
}

TEST_CASE("direct factorization detects bound states and breakdown") {
  const auto b = flat(ModelKind::Points1D);
  try {
    DirectSolver(b, {point1d(0.0, 2.0)}, Energy::bound_side(-1.0));
    CHECK(false);
  } catch (const GreenError& err) {
    CHECK(err.kind() == ErrorKind::PoleDenominator);
  }
  try {
    DirectSolver(b, {point1d(0.0, 1.0), point1d(1e-14, 1.0)}, Energy::bound_side(-1.0));
    CHECK(false);
  } catch (const GreenError& err) {
    const bool bad = err.kind() == ErrorKind::IllConditioned ||
                     err.kind() == ErrorKind::PoleDenominator;
    CHECK(bad);
  }
}

TEST_CASE("kernel tallies are exact") {
  const Energy e = Energy::bound_side(-2.0);
  const auto b = flat(ModelKind::Points1D);
  auto tally = std::make_shared<Tally>();
  auto s = GreenState::init(b, e, tally);
  std::uint64_t expect = 0;
  for (int n = 0; n < 5; ++n) {
    s = s.extended(point1d(-2.0 + n, -0.5));
    expect += static_cast<std::uint64_t>(n) + 1;  // n cross terms plus the diagonal
    CHECK(tally->kernel_evals == expect);
  }
  tally->reset();
  (void)s.evaluate(make_coord(0.1), make_coord(0.2));
  CHECK(tally->kernel_evals == 2 * 5 + 1);

  auto dt = std::make_shared<Tally>();
  std::vector<Center> cs;
  for (int i = 0; i < 4; ++i) cs.push_back(point1d(1.5 * i, -0.5));
  const DirectSolver d(b, cs, e, dt);
  CHECK(dt->kernel_evals == 4 * 5 / 2);
  CHECK(dt->flops > 0);
  (void)d.evaluate(make_coord(0.1), make_coord(0.2));
  CHECK(dt->kernel_evals == 4 * 5 / 2 + 2 * 4 + 1);
}

TEST_CASE("principal matrix entries for a two-center line") {
  const auto b = flat(ModelKind::Points1D);
  const std::vector<Center> cs = {point1d(0.0, 4.0), point1d(1.0, 4.0)};
  const Eigen::MatrixXcd phi = build_principal_matrix(*b, cs, Energy::bound_side(-1.0));
  CHECK(rel(phi(0, 0), Cx(0.25 - 0.5)) <= 1e-14);
  CHECK(rel(phi(1, 1), Cx(0.25 - 0.5)) <= 1e-14);
  CHECK(rel(phi(0, 1), Cx(-0.5 * std::exp(-1.0))) <= 1e-14);
  CHECK(phi(0, 1) == phi(1, 0));

  try {
    build_principal_matrix(*b, {point1d(0.0, 0.0)}, Energy::bound_side(-1.0));
    CHECK(false);
  } catch (const GreenError& err) {
    CHECK(err.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("manifold models run through both evaluation paths") {
  const Energy e = Energy::bound_side(-2.0);
  const auto b = std::make_shared<HeatBackend>(ManifoldSpec::sphere({1.0}), Units{});
  const Center c{PointSupport{make_coord(0.0, 0.0, 1.0)}, RenormCoupling{1.0}};
  const auto s = GreenState::init(b, e).extended(c);
  const Coord x = make_coord(std::sin(1.0), 0.0, std::cos(1.0));
  const Coord y = make_coord(std::sin(2.0), 0.0, std::cos(2.0));
  const Coord a = anchor(c.support);
  const Cx expect =
      b->g0_point(x, y, e) + b->g0_point(x, a, e) * b->g0_point(a, y, e) / b->phi_diag(a, 1.0, e);
  CHECK(rel(s.evaluate(x, y), expect) <= 1e-10);
  CHECK(rel(direct_green(b, {c}, e, x, y), s.evaluate(x, y)) <= 1e-12);
}
