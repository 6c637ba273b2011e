#include "green/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace green;
using namespace green::quad;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  // order n is exact through degree 2n-1
  auto f = [](double x) { return 5 * std::pow(x, 7) - 2 * std::pow(x, 4) + x; };
  const double exact = -2.0 * (2.0 / 5.0) / 2.0 * 2.0;  // int_{-1}^{1} -2x^4 = -4/5
  CHECK(integrate_gl(f, -1.0, 1.0, 4) == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK(exact == doctest::Approx(-0.8));
  CHECK(integrate_gl([](double x) { return std::exp(x); }, 0.0, 2.0, 20) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre weights sum to interval length") {
  for (int n : {1, 2, 7, 16, 33, 64}) {
    const GlRule& r = gauss_legendre(n);
    double s = 0.0;
    for (double w : r.w) s += w;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("adaptive quadrature resolves a sharp peak") {
  auto f = [](double x) { return green::Cx(1.0 / (1e-4 + x * x), 0.0); };
  const double exact = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
  const Cx got = integrate_adaptive(f, -1.0, 1.0, 1e-10 * exact);
  CHECK(got.real() == doctest::Approx(exact).epsilon(1e-9));
  CHECK(got.imag() == doctest::Approx(0.0));
}

TEST_CASE("periodic log-weighted rule integrates trigonometric modes") {
  // int_0^{2pi} log(4 sin^2(tau/2)) cos(m tau) dtau = -2 pi / m (m >= 1), 0 for m = 0
  const int n = 32;
  const auto R = log_weights(n);
  for (int m : {0, 1, 3, 7}) {
    double s = 0.0;
    for (int j = 0; j < 2 * n; ++j) s += R[j] * std::cos(m * (j * M_PI / n));
    const double want = (m == 0) ? 0.0 : -2.0 * M_PI / m;
    CHECK(s == doctest::Approx(want).epsilon(1e-12));
  }
  // smooth companion: trapezoid weight pi/n reproduces the mean
  double s1 = 0.0;
  for (int j = 0; j < 2 * n; ++j) s1 += (M_PI / n) * std::cos(3.0 * (j * M_PI / n));
  CHECK(s1 == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("log rule converges spectrally for an analytic density") {
  // f(tau) = exp(cos tau); reference from n = 64 run
  auto val = [](int n) {
    const auto R = log_weights(n);
    double s = 0.0;
    for (int j = 0; j < 2 * n; ++j) s += R[j] * std::exp(std::cos(j * M_PI / n));
    return s;
  };
  const double hi = val(64);
  CHECK(std::fabs(val(16) - hi) < 1e-10 * std::fabs(hi));
  CHECK(std::fabs(val(24) - hi) < 1e-13 * std::fabs(hi));
}
