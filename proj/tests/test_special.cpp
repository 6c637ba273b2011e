#include "green/special.hpp"

#include <doctest.h>

#include <cmath>

using green::Cx;
using namespace green::special;

// Reference values computed independently at 25+ digits (mpmath) and frozen.

TEST_CASE("K0 real axis matches high-precision references") {
  CHECK(bessel_k0(0.1) == doctest::Approx(2.42706902470201661251850602043).epsilon(1e-14));
  CHECK(bessel_k0(1.0) == doctest::Approx(0.421024438240708333335627379213).epsilon(1e-14));
  CHECK(bessel_k0(5.0) == doctest::Approx(0.00369109833404259427473526100746).epsilon(1e-14));
  CHECK(bessel_k0(20.0) == doctest::Approx(5.74123781533652429271670206162e-10).epsilon(1e-14));
}

TEST_CASE("I0 real axis matches high-precision references") {
  CHECK(bessel_i0(0.1) == doctest::Approx(1.00250156293409560140021055764).epsilon(1e-14));
  CHECK(bessel_i0(1.0) == doctest::Approx(1.26606587775200833559824462521).epsilon(1e-14));
  CHECK(bessel_i0(3.0) == doctest::Approx(4.88079258586502408561123554602).epsilon(1e-14));
  CHECK(bessel_i0(5.0) == doctest::Approx(27.2398718236044468945442320759).epsilon(1e-14));
  CHECK(bessel_i0(20.0) == doctest::Approx(43558282.5595535332721066600892).epsilon(1e-14));
}

TEST_CASE("scaled variants are consistent with unscaled") {
  for (double x : {0.3, 1.7, 2.0, 2.1, 6.0, 9.5, 40.0}) {
    CHECK(bessel_k0_scaled(x) == doctest::Approx(std::exp(x) * bessel_k0(x)).epsilon(1e-12));
    CHECK(bessel_i0_scaled(x) == doctest::Approx(std::exp(-x) * bessel_i0(x)).epsilon(1e-12));
  }
  // scaled forms stay finite far beyond the overflow range
  CHECK(bessel_k0_scaled(800.0) > 0.0);
  CHECK(bessel_i0_scaled(800.0) > 0.0);
}

namespace {
void check_cx(Cx got, Cx want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::abs(want));
}
}  // namespace

TEST_CASE("complex K0 matches references") {
  check_cx(bessel_k0(Cx(0.3, 0.2)), Cx(1.179999808406424655405031, -0.5306683425969295761552823), 1e-13);
  check_cx(bessel_k0(Cx(1.0, 0.5)), Cx(0.3078189429740561651197318, -0.2601600399489966290917755), 1e-13);
  check_cx(bessel_k0(Cx(3.0, 1.0)), Cx(0.01383067506051671850189256, -0.03098977854031822729465894), 1e-13);
  check_cx(bessel_k0(Cx(10.0, 3.0)), Cx(-1.741691258596874204863874e-5, 1.695746303960793123327525e-8), 1e-13);
  check_cx(bessel_k0(Cx(2.5, 2.5)), Cx(-0.05146327878943507170263061, -0.01423298614778135388199876), 1e-13);
  check_cx(bessel_k0(Cx(25.0, 10.0)), Cx(-2.412292555094502581121625e-12, 2.310313412311440955771134e-12), 1e-13);
  // real axis falls through to the real implementation
  check_cx(bessel_k0(Cx(5.0, 0.0)), Cx(0.00369109833404259427473526100746, 0.0), 1e-14);
}

TEST_CASE("complex I0 matches references") {
  check_cx(bessel_i0(Cx(1.0, 0.5)), Cx(1.179856630403078017804679, 0.2737267855910111896448066), 1e-13);
  check_cx(bessel_i0(Cx(3.0, 1.0)), Cx(3.220418127928039054027582, 3.441859305299137881333929), 1e-13);
  check_cx(bessel_i0(Cx(10.0, 3.0)), Cx(-2636.532780815473832684515, 790.0237119421088484482742), 1e-13);
  check_cx(bessel_i0(Cx(2.5, 2.5)), Cx(-1.277628737303640724460464, 2.297871194611088331202234), 1e-12);
  check_cx(bessel_i0(Cx(25.0, 10.0)), Cx(-5156935272.776384429781679, -2078797106.813714395751786), 1e-13);
}

TEST_CASE("smooth part of K0 is regular down to tiny arguments") {
  CHECK(k0_smooth_part(1e-7) == doctest::Approx(-0.5772156649015318036456742).epsilon(1e-9));
  CHECK(k0_smooth_part(0.5) == doctest::Approx(-0.5498819287758050020876425).epsilon(1e-13));
  CHECK(k0_smooth_part(1.9) == doctest::Approx(0.01970717512221751097133585).epsilon(2e-12));
  CHECK(k0_smooth_part(0.0) == doctest::Approx(-0.5772156649015328606065121).epsilon(1e-15));
}

TEST_CASE("Legendre recurrence reproduces known polynomials") {
  CHECK(legendre_p(0, 0.3) == doctest::Approx(1.0));
  CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3));
  CHECK(legendre_p(2, 0.5) == doctest::Approx(0.5 * (3 * 0.25 - 1)).epsilon(1e-15));
  CHECK(legendre_p(10, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(legendre_p(7, -1.0) == doctest::Approx(-1.0).epsilon(1e-14));
  // P_5(x) = (63x^5 - 70x^3 + 15x)/8
  const double x = 0.7;
  const double p5 = (63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8.0;
  CHECK(legendre_p(5, x) == doctest::Approx(p5).epsilon(1e-14));
}
