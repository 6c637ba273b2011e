#pragma once

#include <optional>
#include <string>
#include <vector>

#include "green/support.hpp"
#include "green/units.hpp"

namespace green {

enum class ModelKind {
  Points1D,            // bare point interactions on the line
  Curves2DFlat,        // bare interactions on closed plane curves
  Surfaces3DFlat,      // bare interactions on closed surfaces (spheres)
  PointsRenorm2DFlat,  // renormalized points in the plane
  PointsRenorm3DFlat,  // renormalized points in space
  PointsRenormTorus2D, // renormalized points on a flat rectangular 2-torus
  PointsRenormSphere2D // renormalized points on the round 2-sphere
};

const char* model_kind_name(ModelKind k);
std::optional<ModelKind> model_kind_from_name(const std::string& name);
int ambient_dim(ModelKind k);
bool is_renormalized(ModelKind k);

struct TorusGeometry {
  double L1 = 1.0, L2 = 1.0;
};
struct SphereGeometry {
  double R = 1.0;  // manifold sphere, centered at the origin
};

struct ModelConfig {
  ModelKind kind = ModelKind::Points1D;
  Units units;
  std::vector<Center> centers;
  std::optional<TorusGeometry> torus;
  std::optional<SphereGeometry> sphere;
};

struct ValidationIssue {
  std::string code;
  std::string message;
  std::vector<int> centers;  // indices involved, may be empty
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const;
};

ValidationReport validate(const ModelConfig& cfg);

// Throws GreenError(Validation) when the report is non-empty.
void validate_or_throw(const ModelConfig& cfg);

// Manifold metrics shared by validation and the heat-kernel backends.
double torus_distance(const TorusGeometry& g, const Coord& a, const Coord& b);
double sphere_geodesic(const SphereGeometry& g, const Coord& a, const Coord& b);

}  // namespace green
