#pragma once

#include <functional>
#include <vector>

#include "green/types.hpp"

namespace green::quad {

// Gauss-Legendre rule on [-1, 1]. Nodes/weights are computed once per order
// (Newton on P_n) and cached; thread safe.
struct GlRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GlRule& gauss_legendre(int n);

template <class F>
auto integrate_gl(F&& f, double a, double b, int n) -> decltype(f(0.0)) {
  const GlRule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  decltype(f(0.0)) acc{};
  for (int i = 0; i < n; ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

// Adaptive bisection with a two-level error estimate. abs_tol is an absolute
// target for this interval; throws Numerical when the depth cap is hit with
// the estimate still far off.
template <class F>
Cx integrate_adaptive(F&& f, double a, double b, double abs_tol, int depth = 0) {
  const Cx whole = integrate_gl(f, a, b, 16);
  const double m = 0.5 * (a + b);
  const Cx split = integrate_gl(f, a, m, 16) + integrate_gl(f, m, b, 16);
  const double err = std::abs(whole - split);
  if (err <= abs_tol || depth >= 28) {
    if (err > 100.0 * abs_tol)
      throw GreenError(ErrorKind::Numerical, "adaptive quadrature stalled");
    return split;
  }
  return integrate_adaptive(f, a, m, 0.5 * abs_tol, depth + 1) +
         integrate_adaptive(f, m, b, 0.5 * abs_tol, depth + 1);
}

// Quadrature weights for the periodic logarithmic kernel
//   integral_0^{2pi} f(tau) log(4 sin^2((t - tau)/2)) dtau
//     ~= sum_{j=0}^{2n-1} R_{|i-j|} f(t_j),   t_j = j pi / n,  t = t_i.
// Returned vector has length 2n, indexed by node offset (circulant rule).
// The companion smooth-part rule is the trapezoid with weight pi / n.
std::vector<double> log_weights(int n);

}  // namespace green::quad
