#pragma once

#include "green/backend.hpp"

namespace green {

struct TruncationControl {
  double tol = 1e-12;        // relative quadrature target
  double drop_tol = 1e-14;   // image/mode dropped-term threshold
  int max_l = 4096;          // sphere mode cap
  double tail_log = 45.0;    // exp(-tail_log) truncation of Gaussian tails
};

// Base manifold for the heat-kernel route: flat R^d, rectangular flat
// 2-torus, or round 2-sphere (centered at the origin).
class ManifoldSpec {
 public:
  static ManifoldSpec flat(int dim);
  static ManifoldSpec torus(TorusGeometry g);
  static ManifoldSpec sphere(SphereGeometry g);

  enum class Kind { FlatRD, Torus2D, Sphere2D };
  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double volume() const;  // infinite() for flat
  bool compact() const { return kind_ != Kind::FlatRD; }
  double distance(const Coord& x, const Coord& y) const;  // geodesic
  const TorusGeometry& torus_geometry() const { return torus_; }
  const SphereGeometry& sphere_geometry() const { return sphere_; }

  // Kernel of exp(t Laplacian * diffusivity) at diffusion time a = D_c t.
  // Positive, symmetric, normalized to unit mass.
  double heat_kernel(double a, const Coord& x, const Coord& y,
                     const TruncationControl& ctl = {}) const;

 private:
  Kind kind_ = Kind::FlatRD;
  int dim_ = 1;
  TorusGeometry torus_;
  SphereGeometry sphere_;
};

// G0(x,y) = integral_0^inf dt/hbar K_t(x,y) exp(t E / hbar), Re E < 0.
// Split quadrature: t = u^2 on (0,1], t = 1/s on [1, inf) with adaptive
// panels; Gaussian small-t truncation for separated points.
Cx g0_from_heat(const ManifoldSpec& man, const Coord& x, const Coord& y, const Energy& E,
                const Units& u, const TruncationControl& ctl = {});

// Renormalized principal-matrix diagonal
//   Phi_ii = integral_0^inf dt/hbar K_t(a,a) (exp(-t E_mu/hbar) - exp(t E/hbar)),
// E_mu = (hbar^2/2m) mu^2, finite by subtraction.
Cx phi_diag_renorm(const ManifoldSpec& man, const Coord& a, double mu, const Energy& E,
                   const Units& u, const TruncationControl& ctl = {});

// Backend for the manifold point models; off-diagonal entries via
// g0_from_heat, diagonal via phi_diag_renorm.
class HeatBackend : public Backend {
 public:
  HeatBackend(ManifoldSpec man, Units units, TruncationControl ctl = {});

  int dim() const override;
  bool renormalized() const override { return true; }
  const Units& units() const override { return units_; }
  const ManifoldSpec& manifold() const { return man_; }

  Cx g0_point(const Coord& x, const Coord& y, const Energy& E) const override;
  Cx g0_field(const Support& v, const Coord& x, const Energy& E) const override;
  Cx g0_bilinear(const Support& v, const Support& w, bool same, const Energy& E) const override;
  Cx phi_diag(const Coord& a, double mu, const Energy& E) const override;

 private:
  ManifoldSpec man_;
  Units units_;
  TruncationControl ctl_;
};

}  // namespace green
