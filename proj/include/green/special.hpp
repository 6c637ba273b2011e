#pragma once

#include "green/types.hpp"

namespace green::special {

// Modified Bessel functions of order zero, double precision on the full
// positive axis. Chebyshev-series evaluation; relative accuracy ~1e-15.
double bessel_i0(double x);
double bessel_i0_scaled(double x);  // e^{-|x|} I0(x)
double bessel_k0(double x);         // x > 0
double bessel_k0_scaled(double x);  // e^{x} K0(x), x > 0

// Complex argument, Re z > 0. Log power series for |z| <= 2, backward
// recurrence (Miller) beyond. Intended strip |arg z| <= pi/4; outside it
// accuracy degrades (documented in README).
Cx bessel_k0(Cx z);
Cx bessel_i0(Cx z);

// Smooth even part of K0: K0(z) + log(z/2) I0(z). Entire in z^2; equals
// -EulerGamma at z = 0.
double k0_smooth_part(double z);
Cx k0_smooth_part(Cx z);

// Legendre polynomial P_l(x), |x| <= 1, upward recurrence.
double legendre_p(int l, double x);

}  // namespace green::special
