#pragma once

#include "green/backend.hpp"

namespace green {

// Closed-form free Green's functions of -(hbar^2/2m) Laplacian - E on R^d,
// kappa = sqrt(2m(-E))/hbar:
//   d=1: (2m/hbar^2) e^{-kappa r} / (2 kappa)
//   d=2: (2m/hbar^2) K0(kappa r) / (2 pi)
//   d=3: (2m/hbar^2) e^{-kappa r} / (4 pi r)
Cx g0_free(int dim, double r, const Energy& E, const Units& u);

// Backend for the flat models. Curve bilinears use the Kussmaul log-weighted
// Nystrom rule on the diagonal and the periodic trapezoid off it; sphere
// field/bilinear values use the exact radial reductions (field values go
// through the support's product quadrature rule).
class FlatBackend : public Backend {
 public:
  FlatBackend(ModelKind kind, Units units);

  int dim() const override { return dim_; }
  bool renormalized() const override { return renorm_; }
  const Units& units() const override { return units_; }

  Cx g0_point(const Coord& x, const Coord& y, const Energy& E) const override;
  Cx g0_field(const Support& v, const Coord& x, const Energy& E) const override;
  Cx g0_bilinear(const Support& v, const Support& w, bool same, const Energy& E) const override;
  Cx phi_diag(const Coord& a, double mu, const Energy& E) const override;

 private:
  ModelKind kind_;
  Units units_;
  int dim_;
  bool renorm_;
};

}  // namespace green
