#pragma once

#include "green/config.hpp"
#include "green/support.hpp"
#include "green/units.hpp"

namespace green {

// Free-resolvent evaluations for one model geometry. All energies are passed
// per call; implementations are stateless apart from cached quadrature data
// and safe to share across threads.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual int dim() const = 0;
  virtual bool renormalized() const = 0;
  virtual const Units& units() const = 0;

  // G0(x, y). Throws SingularProbe on coincident arguments in 2D/3D.
  virtual Cx g0_point(const Coord& x, const Coord& y, const Energy& E) const = 0;

  // integral over the support of G0(x, .)
  virtual Cx g0_field(const Support& v, const Coord& x, const Energy& E) const = 0;

  // double integral of G0 over v x w; `same` marks the diagonal entry, which
  // uses the singular rules (finite for 1D points, curves and surfaces)
  virtual Cx g0_bilinear(const Support& v, const Support& w, bool same, const Energy& E) const = 0;

  // renormalized principal-matrix diagonal at a point center
  virtual Cx phi_diag(const Coord& a, double mu, const Energy& E) const;
};

// Effective rank-one coupling constant: lambda for points, lambda / L for
// curves, lambda / area for surfaces.
double effective_coupling(const Support& s, const BareCoupling& c);

std::shared_ptr<const Backend> make_backend(const ModelConfig& cfg);

}  // namespace green
