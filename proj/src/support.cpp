#include "green/support.hpp"

#include <cmath>

#include "green/quadrature.hpp"

namespace green {

CurveSupport::CurveSupport(Param gamma, double length, int order)
    : gamma_(std::move(gamma)), length_(length), order_(order) {
  if (!(length > 0.0)) throw GreenError(ErrorKind::Validation, "curve length must be positive");
  if (order < 8 || order % 2 != 0)
    throw GreenError(ErrorKind::Validation, "curve quadrature order must be even and >= 8");
  nodes_.resize(order_);
  for (int j = 0; j < order_; ++j) nodes_[j] = gamma_(length_ * j / order_);
  diameter_ = 0.0;
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j) diameter_ = std::max(diameter_, dist(nodes_[i], nodes_[j]));
}

SphereSupport::SphereSupport(Coord center, double radius, int order)
    : center_(center), radius_(radius), order_(order) {
  if (!(radius > 0.0)) throw GreenError(ErrorKind::Validation, "sphere radius must be positive");
  if (order < 4) throw GreenError(ErrorKind::Validation, "sphere quadrature order must be >= 4");
  const auto& gl = quad::gauss_legendre(order);
  const int nphi = 2 * order;
  nodes_.reserve(order * nphi);
  weights_.reserve(order * nphi);
  for (int i = 0; i < order; ++i) {
    const double ct = gl.x[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * M_PI * j / nphi;
      nodes_.push_back({center_[0] + radius_ * st * std::cos(phi),
                        center_[1] + radius_ * st * std::sin(phi), center_[2] + radius_ * ct});
      weights_.push_back(radius_ * radius_ * gl.w[i] * (2.0 * M_PI / nphi));
    }
  }
}

CurveSupport make_circle(double cx, double cy, double radius, int order) {
  if (!(radius > 0.0)) throw GreenError(ErrorKind::Validation, "circle radius must be positive");
  auto gamma = [cx, cy, radius](double s) {
    return make_coord(cx + radius * std::cos(s / radius), cy + radius * std::sin(s / radius));
  };
  return CurveSupport(gamma, 2.0 * M_PI * radius, order);
}

SphereSupport make_sphere(const Coord& center, double radius, int order) {
  return SphereSupport(center, radius, order);
}

Coord anchor(const Support& s) {
  if (const auto* p = std::get_if<PointSupport>(&s)) return p->pos;
  if (const auto* c = std::get_if<CurveSupport>(&s)) return c->nodes()[0];
  return std::get<SphereSupport>(s).center();
}

double support_measure(const Support& s) {
  if (std::holds_alternative<PointSupport>(s)) return 1.0;
  if (const auto* c = std::get_if<CurveSupport>(&s)) return c->length();
  return std::get<SphereSupport>(s).area();
}

double support_diameter(const Support& s) {
  if (std::holds_alternative<PointSupport>(s)) return 0.0;
  if (const auto* c = std::get_if<CurveSupport>(&s)) return c->diameter();
  return 2.0 * std::get<SphereSupport>(s).radius();
}

}  // namespace green
