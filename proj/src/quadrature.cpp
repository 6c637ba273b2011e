#include "green/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace green::quad {

namespace {

GlRule compute_gl(int n) {
  GlRule r;
  r.x.resize(n);
  r.w.resize(n);
  // Newton iteration on P_n from the Chebyshev-angle initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

std::map<int, GlRule>& gl_cache() {
  static std::map<int, GlRule> cache;
  return cache;
}
std::mutex gl_mutex;

}  // namespace

const GlRule& gauss_legendre(int n) {
  if (n < 1) throw GreenError(ErrorKind::Internal, "gauss_legendre order must be positive");
  std::lock_guard<std::mutex> lock(gl_mutex);
  auto it = gl_cache().find(n);
  if (it == gl_cache().end()) it = gl_cache().emplace(n, compute_gl(n)).first;
  return it->second;
}

std::vector<double> log_weights(int n) {
  if (n < 2) throw GreenError(ErrorKind::Internal, "log_weights needs n >= 2");
  std::vector<double> R(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    const double t = k * M_PI / n;
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * t) / m;
    R[k] = -(2.0 * M_PI / n) * s - (M_PI / (n * n)) * std::cos(n * t);
  }
  return R;
}

}  // namespace green::quad
