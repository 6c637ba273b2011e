#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "green/types.hpp"

namespace green {

struct PointSupport {
  Coord pos{};
};

// Closed curve in the plane, arc-length parametrization gamma : [0, L] -> R^2.
// Nodes are precomputed at the 2n Kussmaul points s_j = j L / order.
class CurveSupport {
 public:
  using Param = std::function<Coord(double)>;

  CurveSupport(Param gamma, double length, int order);

  Coord at(double s) const { return gamma_(s); }
  double length() const { return length_; }
  int order() const { return order_; }  // node count, even
  const std::vector<Coord>& nodes() const { return nodes_; }
  double diameter() const { return diameter_; }

 private:
  Param gamma_;
  double length_;
  int order_;
  std::vector<Coord> nodes_;
  double diameter_;
};

// Sphere surface in R^3 with a product Gauss-Legendre (cos theta) x uniform
// azimuth rule; weights sum to the area 4 pi R^2.
class SphereSupport {
 public:
  SphereSupport(Coord center, double radius, int order);

  const Coord& center() const { return center_; }
  double radius() const { return radius_; }
  int order() const { return order_; }
  double area() const { return 4.0 * M_PI * radius_ * radius_; }
  const std::vector<Coord>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  Coord center_;
  double radius_;
  int order_;
  std::vector<Coord> nodes_;
  std::vector<double> weights_;
};

using Support = std::variant<PointSupport, CurveSupport, SphereSupport>;

struct BareCoupling {
  double lambda = 0.0;  // attractive > 0 in the sign convention -lambda delta
};
struct RenormCoupling {
  double mu = 1.0;  // single-center bound-state wavenumber, > 0
};
using Coupling = std::variant<BareCoupling, RenormCoupling>;

struct Center {
  Support support;
  Coupling coupling;
};

// Named parametrization registry.
CurveSupport make_circle(double cx, double cy, double radius, int order);
SphereSupport make_sphere(const Coord& center, double radius, int order);

// Representative coordinate (point position, curve node 0, sphere center).
Coord anchor(const Support& s);
// Measure of the support: 1 for points, L for curves, area for spheres.
double support_measure(const Support& s);
double support_diameter(const Support& s);

}  // namespace green
