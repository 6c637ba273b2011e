#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace green {

using Cx = std::complex<double>;

// Ambient coordinate. Unused trailing components stay zero, so the Euclidean
// distance below is valid for 1D/2D/3D alike.
using Coord = std::array<double, 3>;

inline Coord make_coord(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

inline double dist(const Coord& a, const Coord& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double norm(const Coord& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

enum class ErrorKind {
  Validation,      // malformed model or inputs
  SingularProbe,   // probe coincides with interaction support where G0 diverges
  PoleDenominator, // rank-one denominator vanished (energy sits on a pole)
  IllConditioned,  // principal matrix condition estimate above refusal threshold
  Numerical,       // quadrature/series failed to converge in its documented range
  Internal,
};

class GreenError : public std::runtime_error {
 public:
  GreenError(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Instrumentation counters. kernel_evals counts backend Green's-function
// evaluations (point, field or bilinear each count once); flops counts
// scalar multiply-accumulates in the engine's own linear algebra.
struct Tally {
  std::uint64_t kernel_evals = 0;
  std::uint64_t flops = 0;
  void reset() { kernel_evals = 0; flops = 0; }
};

}  // namespace green
