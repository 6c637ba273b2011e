#pragma once

#include <cmath>
#include <complex>

#include "green/types.hpp"

namespace green {

// H0 = -(hbar^2 / (2m)) Laplacian. Defaults hbar = 1, 2m = 1.
struct Units {
  double hbar = 1.0;
  double mass2 = 1.0;  // 2m

  // diffusivity of exp(-t H0 / hbar)
  double diffusivity() const { return hbar / mass2; }
  // prefactor of the flat resolvent kernels, 2m/hbar^2
  double kernel_prefactor() const { return mass2 / (hbar * hbar); }
};

// Energy with the bound-state sign convention Re E < 0 enforced by default.
// complex_probe() admits any E off the half line [0, inf) for the flat
// closed-form backends; heat-kernel backends still require Re E < 0.
class Energy {
 public:
  static Energy bound_side(Cx value) {
    if (!(value.real() < 0.0))
      throw GreenError(ErrorKind::Validation, "energy must satisfy Re E < 0");
    return Energy(value, false);
  }
  static Energy bound_side(double value) { return bound_side(Cx(value, 0.0)); }

  static Energy complex_probe(Cx value) {
    if (value.imag() == 0.0 && value.real() >= 0.0)
      throw GreenError(ErrorKind::Validation, "energy on the continuum half line [0, inf)");
    return Energy(value, true);
  }

  Cx value() const { return value_; }
  bool off_bound_side() const { return off_bound_side_; }

  // kappa = sqrt(2m (-E)) / hbar, principal branch, Re kappa > 0
  Cx kappa(const Units& u) const {
    const Cx k = std::sqrt(-value_ * u.mass2) / u.hbar;
    return k.real() < 0.0 ? -k : k;
  }

 private:
  Energy(Cx v, bool off) : value_(v), off_bound_side_(off) {}
  Cx value_;
  bool off_bound_side_;
};

}  // namespace green
