#include "green/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace green {

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Points1D: return "points_1d";
    case ModelKind::Curves2DFlat: return "curves_2d_flat";
    case ModelKind::Surfaces3DFlat: return "surfaces_3d_flat";
    case ModelKind::PointsRenorm2DFlat: return "points_renorm_2d_flat";
    case ModelKind::PointsRenorm3DFlat: return "points_renorm_3d_flat";
    case ModelKind::PointsRenormTorus2D: return "points_renorm_torus_2d";
    case ModelKind::PointsRenormSphere2D: return "points_renorm_sphere_2d";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_name(const std::string& name) {
  for (ModelKind k :
       {ModelKind::Points1D, ModelKind::Curves2DFlat, ModelKind::Surfaces3DFlat,
        ModelKind::PointsRenorm2DFlat, ModelKind::PointsRenorm3DFlat,
        ModelKind::PointsRenormTorus2D, ModelKind::PointsRenormSphere2D})
    if (name == model_kind_name(k)) return k;
  return std::nullopt;
}

int ambient_dim(ModelKind k) {
  switch (k) {
    case ModelKind::Points1D: return 1;
    case ModelKind::Curves2DFlat:
    case ModelKind::PointsRenorm2DFlat:
    case ModelKind::PointsRenormTorus2D: return 2;
    case ModelKind::Surfaces3DFlat:
    case ModelKind::PointsRenorm3DFlat:
    case ModelKind::PointsRenormSphere2D: return 3;
  }
  return 0;
}

bool is_renormalized(ModelKind k) {
  switch (k) {
    case ModelKind::PointsRenorm2DFlat:
    case ModelKind::PointsRenorm3DFlat:
    case ModelKind::PointsRenormTorus2D:
    case ModelKind::PointsRenormSphere2D: return true;
    default: return false;
  }
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << i.code << ": " << i.message;
    if (!i.centers.empty()) {
      os << " (centers";
      for (int c : i.centers) os << ' ' << c;
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void add(ValidationReport& r, std::string code, std::string msg, std::vector<int> idx = {}) {
  r.issues.push_back({std::move(code), std::move(msg), std::move(idx)});
}

double wrap_delta(double d, double L) {
  d = std::fmod(std::fabs(d), L);
  return std::min(d, L - d);
}

// sample points of a support used for containment/min-distance checks
std::vector<Coord> sample_points(const Support& s) {
  if (const auto* p = std::get_if<PointSupport>(&s)) return {p->pos};
  if (const auto* c = std::get_if<CurveSupport>(&s)) return c->nodes();
  return std::get<SphereSupport>(s).nodes();
}

}  // namespace

double torus_distance(const TorusGeometry& g, const Coord& a, const Coord& b) {
  const double dx = wrap_delta(a[0] - b[0], g.L1);
  const double dy = wrap_delta(a[1] - b[1], g.L2);
  return std::sqrt(dx * dx + dy * dy);
}

double sphere_geodesic(const SphereGeometry& g, const Coord& a, const Coord& b) {
  const double dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / (g.R * g.R);
  return g.R * std::acos(std::clamp(dot, -1.0, 1.0));
}

ValidationReport validate(const ModelConfig& cfg) {
  ValidationReport rep;
  const int dim = ambient_dim(cfg.kind);
  const bool renorm = is_renormalized(cfg.kind);

  if (!(cfg.units.hbar > 0.0) || !(cfg.units.mass2 > 0.0))
    add(rep, "units.invalid", "hbar and 2m must be positive");

  if (cfg.kind == ModelKind::PointsRenormTorus2D) {
    if (!cfg.torus)
      add(rep, "geometry.missing", "torus model needs [model] torus lengths");
    else if (!(cfg.torus->L1 > 0.0 && cfg.torus->L2 > 0.0))
      add(rep, "geometry.invalid", "torus lengths must be positive");
  }
  if (cfg.kind == ModelKind::PointsRenormSphere2D) {
    if (!cfg.sphere)
      add(rep, "geometry.missing", "sphere model needs [model] radius");
    else if (!(cfg.sphere->R > 0.0))
      add(rep, "geometry.invalid", "sphere radius must be positive");
  }

  for (int i = 0; i < (int)cfg.centers.size(); ++i) {
    const Center& c = cfg.centers[i];
    const bool point = std::holds_alternative<PointSupport>(c.support);
    const bool curve = std::holds_alternative<CurveSupport>(c.support);
    const bool sphere = std::holds_alternative<SphereSupport>(c.support);

    switch (cfg.kind) {
      case ModelKind::Points1D:
      case ModelKind::PointsRenorm2DFlat:
      case ModelKind::PointsRenorm3DFlat:
      case ModelKind::PointsRenormTorus2D:
      case ModelKind::PointsRenormSphere2D:
        if (!point) add(rep, "model.support_kind", "this model admits point supports only", {i});
        break;
      case ModelKind::Curves2DFlat:
        if (!curve) add(rep, "model.support_kind", "this model admits curve supports only", {i});
        break;
      case ModelKind::Surfaces3DFlat:
        if (!sphere) add(rep, "model.support_kind", "this model admits surface supports only", {i});
        break;
    }

    if (renorm) {
      const auto* rc = std::get_if<RenormCoupling>(&c.coupling);
      if (!rc)
        add(rep, "model.coupling_kind", "renormalized model needs mu couplings", {i});
      else if (!(rc->mu > 0.0))
        add(rep, "coupling.mu_nonpositive", "mu must be positive", {i});
    } else {
      const auto* bc = std::get_if<BareCoupling>(&c.coupling);
      if (!bc)
        add(rep, "model.coupling_kind", "bare model needs lambda couplings", {i});
      else if (!std::isfinite(bc->lambda))
        add(rep, "coupling.lambda_invalid", "lambda must be finite", {i});
    }

    if (point) {
      const Coord& p = std::get<PointSupport>(c.support).pos;
      for (int d = dim; d < 3; ++d)
        if (p[d] != 0.0)
          add(rep, "center.out_of_dimension", "position has components beyond the model dimension",
              {i});
      if (cfg.kind == ModelKind::PointsRenormSphere2D && cfg.sphere && cfg.sphere->R > 0.0) {
        if (std::fabs(norm(p) - cfg.sphere->R) > 1e-8 * cfg.sphere->R)
          add(rep, "sphere.off_manifold", "point does not lie on the manifold sphere", {i});
      }
    }

    if (curve) {
      const auto& cs = std::get<CurveSupport>(c.support);
      const double L = cs.length();
      if (dist(cs.at(0.0), cs.at(L)) > 1e-8 * std::max(1.0, L))
        add(rep, "curve.not_closed", "gamma(0) != gamma(L)", {i});
      // arc-length check by central differences at the quadrature nodes
      const double h = 1e-6 * L;
      for (int j = 0; j < cs.order(); ++j) {
        const double s = L * j / cs.order();
        const Coord a = cs.at(s - h), b = cs.at(s + h);
        const double speed = dist(a, b) / (2.0 * h);
        if (std::fabs(speed - 1.0) > 1e-8) {
          add(rep, "curve.not_arclength", "|gamma'| deviates from 1 at a node", {i});
          break;
        }
      }
      for (int j = 0; j < cs.order(); ++j)
        if (cs.nodes()[j][2] != 0.0) {
          add(rep, "center.out_of_dimension", "curve leaves the plane", {i});
          break;
        }
    }
  }

  // pairwise separation; uses the manifold metric where applicable
  double diam = 0.0;
  std::vector<std::vector<Coord>> pts;
  pts.reserve(cfg.centers.size());
  for (const auto& c : cfg.centers) pts.push_back(sample_points(c.support));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i; j < pts.size(); ++j)
      for (const Coord& a : pts[i])
        for (const Coord& b : pts[j]) diam = std::max(diam, dist(a, b));

  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double dmin = 1e300;
      for (const Coord& a : pts[i])
        for (const Coord& b : pts[j]) {
          double d;
          if (cfg.kind == ModelKind::PointsRenormTorus2D && cfg.torus)
            d = torus_distance(*cfg.torus, a, b);
          else if (cfg.kind == ModelKind::PointsRenormSphere2D && cfg.sphere)
            d = sphere_geodesic(*cfg.sphere, a, b);
          else
            d = dist(a, b);
          dmin = std::min(dmin, d);
        }
      const auto* ci = std::get_if<CurveSupport>(&cfg.centers[i].support);
      const auto* cj = std::get_if<CurveSupport>(&cfg.centers[j].support);
      if (dmin == 0.0)
        add(rep, "centers.duplicate", "coincident supports", {(int)i, (int)j});
      else if (diam > 0.0 && dmin < 1e-9 * diam)
        add(rep, "centers.too_close", "support separation below 1e-9 of the configuration size",
            {(int)i, (int)j});
      else if (ci && cj &&
               dmin < std::max(ci->length() / ci->order(), cj->length() / cj->order()))
        add(rep, "curves.overlap",
            "curve separation below the node spacing (intersecting or unresolvable)",
            {(int)i, (int)j});
    }
  }

  // spheres in the 3D flat model must not intersect
  if (cfg.kind == ModelKind::Surfaces3DFlat) {
    for (size_t i = 0; i < cfg.centers.size(); ++i) {
      const auto* si = std::get_if<SphereSupport>(&cfg.centers[i].support);
      if (!si) continue;
      for (size_t j = i + 1; j < cfg.centers.size(); ++j) {
        const auto* sj = std::get_if<SphereSupport>(&cfg.centers[j].support);
        if (!sj) continue;
        const double d = dist(si->center(), sj->center());
        const double sum = si->radius() + sj->radius();
        const double gap = std::fabs(si->radius() - sj->radius());
        const bool disjoint = d > sum * (1.0 + 1e-12);
        const bool nested = d < gap * (1.0 - 1e-12);
        if (!disjoint && !nested)
          add(rep, "surfaces.intersect", "spheres intersect or touch", {(int)i, (int)j});
      }
    }
  }

  return rep;
}

void validate_or_throw(const ModelConfig& cfg) {
  ValidationReport rep = validate(cfg);
  if (!rep.ok()) throw GreenError(ErrorKind::Validation, rep.str());
}

}  // namespace green
