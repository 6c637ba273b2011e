#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "green/engine.hpp"
#include "green/flat_backend.hpp"
#include "green/heat.hpp"
#include "green/spectrum.hpp"

using namespace green;

namespace {

std::shared_ptr<const Backend> flat(ModelKind k) {
  return std::make_shared<FlatBackend>(k, Units{});
}

Center point1d(double x, double lam) {
  return Center{PointSupport{make_coord(x)}, BareCoupling{lam}};
}

const std::vector<Center> kPair = {point1d(-0.5, 4.0), point1d(0.5, 4.0)};

}  // namespace

TEST_CASE("single attractive point binds at minus lambda squared over four") {
  const auto b = flat(ModelKind::Points1D);
  const auto scan = find_bound_states(b, {point1d(0.3, 2.0)});
  REQUIRE(scan.roots.size() == 1);
  CHECK(std::abs(scan.roots[0].energy + 1.0) <= 1e-10);
  CHECK(scan.roots[0].multiplicity == 1);
  CHECK(scan.roots[0].residual <= 1e-9);
  CHECK_FALSE(scan.roots[0].at_edge);
}

TEST_CASE("symmetric pair splits into even and odd levels") {
  const auto b = flat(ModelKind::Points1D);
  const auto scan = find_bound_states(b, kPair);
  REQUIRE(scan.roots.size() == 2);
  CHECK(std::abs(scan.roots[0].energy - -4.91826029030318137468450352899) <= 1e-8);
  CHECK(std::abs(scan.roots[1].energy - -2.53963828218816532499888178977) <= 1e-8);
}

TEST_CASE("negative count steps up across each level") {
  const auto b = flat(ModelKind::Points1D);
  CHECK(negative_count(*b, kPair, -6.0) == 0);
  CHECK(negative_count(*b, kPair, -4.0) == 1);
  CHECK(negative_count(*b, kPair, -1.0) == 2);
}

TEST_CASE("char value decreases as the energy rises") {
  const auto b = flat(ModelKind::Points1D);
  double prev = char_value(*b, kPair, -8.0);
  CHECK(prev > 0.0);
  for (double e : {-6.0, -4.9, -4.0, -2.0, -1.0}) {
    const double cur = char_value(*b, kPair, e);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < 0.0);
}

TEST_CASE("char value approaches the inverse coupling far below the spectrum") {
  const auto b = flat(ModelKind::Points1D);
  CHECK(std::abs(char_value(*b, {point1d(0.0, 4.0)}, -1e6) - 0.25) <= 1e-3);
  CHECK(char_value(*b, {}, -1.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("renormalized point binds at minus mu squared") {
  const auto b = flat(ModelKind::PointsRenorm2DFlat);
  const std::vector<Center> cs = {
      Center{PointSupport{make_coord(0.0, 0.0)}, RenormCoupling{1.0}}};
  const auto scan = find_bound_states(b, cs);
  REQUIRE(scan.roots.size() == 1);
  CHECK(std::abs(scan.roots[0].energy + 1.0) <= 1e-8);
}

TEST_CASE("far-separated identical centers cluster into one degenerate level") {
  const auto b = flat(ModelKind::PointsRenorm2DFlat);
  const std::vector<Center> cs = {
      Center{PointSupport{make_coord(-15.0, 0.0)}, RenormCoupling{1.0}},
      Center{PointSupport{make_coord(15.0, 0.0)}, RenormCoupling{1.0}}};
  const auto scan = find_bound_states(b, cs);
  REQUIRE(scan.roots.size() == 1);
  CHECK(scan.roots[0].multiplicity == 2);
  CHECK(std::abs(scan.roots[0].energy + 1.0) <= 1e-8);
}

TEST_CASE("attractive line always binds, never more than n levels") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-8.0, 8.0), lam(0.3, 3.0);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Center> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(point1d(pos(rng) + 20.0 * i, lam(rng)));
    const auto scan = find_bound_states(flat(ModelKind::Points1D), cs);
    int total = 0;
    for (const auto& r : scan.roots) total += r.multiplicity;
    CHECK(total >= 1);
    CHECK(total <= 5);
  }
}

TEST_CASE("scan is stable under grid refinement") {
  const auto b = flat(ModelKind::Points1D);
  ScanOptions coarse;
  coarse.grid = 256;
  ScanOptions fine;
  fine.grid = 1024;
  const auto a = find_bound_states(b, kPair, coarse);
  const auto c = find_bound_states(b, kPair, fine);
  REQUIRE(a.roots.size() == c.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i)
    CHECK(std::abs(a.roots[i].energy - c.roots[i].energy) <= 1e-8);
}

TEST_CASE("direct factorization degrades exactly at a found level") {
  const auto b = flat(ModelKind::Points1D);
  const auto scan = find_bound_states(b, kPair);
  REQUIRE_FALSE(scan.roots.empty());
  const double e_star = scan.roots[0].energy;
  bool flagged = false;
  try {
    const DirectSolver d(b, kPair, Energy::bound_side(e_star));
    flagged = d.condition_estimate() > 1e8;
  } catch (const GreenError&) {
    flagged = true;
  }
  CHECK(flagged);
}

TEST_CASE("manifold scan finds the renormalized level on the sphere") {
  const auto b = std::make_shared<HeatBackend>(ManifoldSpec::sphere({1.0}), Units{});
  const std::vector<Center> cs = {
      Center{PointSupport{make_coord(0.0, 0.0, 1.0)}, RenormCoupling{1.0}}};
  ScanOptions opts;
  opts.e_lo = -2.5;
  opts.e_hi = -0.3;
  opts.grid = 48;
  opts.tol = 1e-8;
  const auto scan = find_bound_states(b, cs, opts);
  REQUIRE(scan.roots.size() == 1);
  CHECK(std::abs(scan.roots[0].energy + 1.0) <= 1e-6);
}
