#include "green/engine.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace green {

namespace {

// supports constructed from the same data compare equal; used to route
// diagonal quadrature when a query support coincides with a stored center
bool same_support(const Support& a, const Support& b) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<PointSupport>(&a))
    return p->pos == std::get<PointSupport>(b).pos;
  if (const auto* c = std::get_if<CurveSupport>(&a)) {
    const auto& d = std::get<CurveSupport>(b);
    return c->length() == d.length() && c->order() == d.order() && c->nodes() == d.nodes();
  }
  const auto& s = std::get<SphereSupport>(a);
  const auto& t = std::get<SphereSupport>(b);
  return s.center() == t.center() && s.radius() == t.radius() && s.order() == t.order();
}

Cx cross_bilinear(const Backend& b, const Support& v, const Support& w, const Energy& E) {
  return b.g0_bilinear(v, w, same_support(v, w), E);
}

}  // namespace

Eigen::MatrixXcd build_principal_matrix(const Backend& backend,
                                        const std::vector<Center>& centers, const Energy& E,
                                        Tally* tally) {
  const int n = static_cast<int>(centers.size());
  Eigen::MatrixXcd phi(n, n);
  std::uint64_t kernels = 0, flops = 0;
  for (int i = 0; i < n; ++i) {
    const Center& ci = centers[i];
    if (const auto* bare = std::get_if<BareCoupling>(&ci.coupling)) {
      const double c = effective_coupling(ci.support, *bare);
      if (c == 0.0)
        throw GreenError(ErrorKind::Validation,
                         "zero coupling has no principal-matrix representation");
      phi(i, i) = 1.0 / c - backend.g0_bilinear(ci.support, ci.support, true, E);
      ++kernels;
      ++flops;
    } else {
      const auto& rc = std::get<RenormCoupling>(ci.coupling);
      phi(i, i) = backend.phi_diag(anchor(ci.support), rc.mu, E);
      ++kernels;
    }
    for (int j = i + 1; j < n; ++j) {
      const Cx b = cross_bilinear(backend, ci.support, centers[j].support, E);
      phi(i, j) = -b;
      phi(j, i) = -b;
      ++kernels;
    }
  }
  if (tally) {
    tally->kernel_evals += kernels;
    tally->flops += flops;
  }
  return phi;
}

GreenState GreenState::init(std::shared_ptr<const Backend> backend, Energy energy,
                            std::shared_ptr<Tally> tally) {
  if (!backend) throw GreenError(ErrorKind::Internal, "null backend");
  GreenState s(std::move(backend), energy, std::move(tally));
  s.W_.resize(0, 0);
  return s;
}

void GreenState::count(std::uint64_t kernels, std::uint64_t flops) const {
  if (tally_) {
    tally_->kernel_evals += kernels;
    tally_->flops += flops;
  }
}

GreenState::Border GreenState::border(const Center& c) const {
  const int n = size();
  Border b;
  b.g.resize(n);
  for (int i = 0; i < n; ++i)
    b.g[i] = cross_bilinear(*backend_, centers_[i].support, c.support, energy_);
  b.t.assign(n, Cx(0.0, 0.0));
  std::uint64_t flops = 0;
  for (int i = 0; i < n; ++i) {
    Cx acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) acc += W_(i, j) * b.g[j];
    b.t[i] = acc;
  }
  flops += static_cast<std::uint64_t>(n) * n;
  b.q = Cx(0.0, 0.0);
  for (int i = 0; i < n; ++i) b.q += b.g[i] * b.t[i];
  flops += n;

  if (const auto* bare = std::get_if<BareCoupling>(&c.coupling)) {
    const double cc = effective_coupling(c.support, *bare);
    const Cx bvv = backend_->g0_bilinear(c.support, c.support, true, energy_);
    const Cx gvv = bvv + b.q;
    b.denom = 1.0 - cc * gvv;
    b.pole_scale = std::max(1.0, std::abs(cc * gvv));
    b.factor = b.denom == Cx(0.0, 0.0) ? Cx(0.0, 0.0) : cc / b.denom;
  } else {
    const auto& rc = std::get<RenormCoupling>(c.coupling);
    const Cx phi_loc = backend_->phi_diag(anchor(c.support), rc.mu, energy_);
    b.denom = phi_loc - b.q;
    b.pole_scale = std::max({1.0, std::abs(phi_loc), std::abs(b.q)});
    b.factor = b.denom == Cx(0.0, 0.0) ? Cx(0.0, 0.0) : 1.0 / b.denom;
  }
  count(static_cast<std::uint64_t>(n) + 1, flops + 4);
  return b;
}

Cx GreenState::denominator(const Center& c) const { return border(c).denom; }

GreenState GreenState::extended(const Center& c) const {
  const int n = size();
  Border b = border(c);
  if (std::abs(b.denom) < 1e-12 * b.pole_scale)
    throw GreenError(ErrorKind::PoleDenominator,
                     "energy is at a pole of the extended Green's function");
  GreenState out(backend_, energy_, tally_);
  out.centers_ = centers_;
  out.centers_.push_back(c);
  out.W_.resize(n + 1, n + 1);
  std::uint64_t flops = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Cx w = W_(i, j) + b.factor * b.t[i] * b.t[j];
      out.W_(i, j) = w;
      out.W_(j, i) = w;
    }
    const Cx col = b.factor * b.t[i];
    out.W_(i, n) = col;
    out.W_(n, i) = col;
  }
  flops += static_cast<std::uint64_t>(n) * (n + 1) / 2 + n;
  out.W_(n, n) = b.factor;
  count(0, flops);
  return out;
}

Cx GreenState::evaluate(const Coord& x, const Coord& y) const {
  const int n = size();
  const Cx g0 = backend_->g0_point(x, y, energy_);
  std::vector<Cx> fx(n), fy(n);
  for (int i = 0; i < n; ++i) {
    fx[i] = backend_->g0_field(centers_[i].support, x, energy_);
    fy[i] = backend_->g0_field(centers_[i].support, y, energy_);
  }
  Cx acc = g0;
  for (int i = 0; i < n; ++i) {
    Cx row(0.0, 0.0);
    for (int j = 0; j < n; ++j) row += W_(i, j) * fy[j];
    acc += fx[i] * row;
  }
  count(2 * static_cast<std::uint64_t>(n) + 1,
        static_cast<std::uint64_t>(n) * n + n);
  return acc;
}

Cx GreenState::bilinear(const Support& v, const Support& w, bool same) const {
  const int n = size();
  const Cx bvw = backend_->g0_bilinear(v, w, same, energy_);
  std::vector<Cx> gv(n), gw(n);
  for (int i = 0; i < n; ++i) {
    gv[i] = cross_bilinear(*backend_, centers_[i].support, v, energy_);
    gw[i] = same ? gv[i] : cross_bilinear(*backend_, centers_[i].support, w, energy_);
  }
  Cx acc = bvw;
  for (int i = 0; i < n; ++i) {
    Cx row(0.0, 0.0);
    for (int j = 0; j < n; ++j) row += W_(i, j) * gw[j];
    acc += gv[i] * row;
  }
  count((same ? 1 : 2) * static_cast<std::uint64_t>(n) + 1,
        static_cast<std::uint64_t>(n) * n + n);
  return acc;
}

DirectSolver::DirectSolver(std::shared_ptr<const Backend> backend, std::vector<Center> centers,
                           Energy energy, std::shared_ptr<Tally> tally)
    : backend_(std::move(backend)), energy_(energy), centers_(std::move(centers)),
      tally_(std::move(tally)) {
  const int n = static_cast<int>(centers_.size());
  phi_ = build_principal_matrix(*backend_, centers_, energy_, tally_.get());
  Eigen::MatrixXcd a = phi_;
  diag_.assign(n, Cx(0.0, 0.0));
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  std::uint64_t flops = 0;
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  std::vector<Cx> col(n);
  for (int j = 0; j < n; ++j) {
    // symmetric diagonal pivoting: the largest remaining |diagonal| caps
    // element growth without breaking symmetry of the factorization
    int p = j;
    for (int i = j + 1; i < n; ++i)
      if (std::abs(a(i, i)) > std::abs(a(p, p))) p = i;
    if (p != j) {
      a.row(j).swap(a.row(p));
      a.col(j).swap(a.col(p));
      std::swap(perm_[j], perm_[p]);
    }
    const Cx d = a(j, j);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()) || std::abs(d) < 1e-280)
      throw GreenError(ErrorKind::PoleDenominator,
                       "principal matrix is singular at this energy (bound state)");
    diag_[j] = d;
    dmax = std::max(dmax, std::abs(d));
    dmin = std::min(dmin, std::abs(d));
    for (int i = j + 1; i < n; ++i) {
      col[i] = a(i, j);
      a(i, j) /= d;
    }
    flops += n - 1 - j;
    // keep the trailing block fully symmetric so the pivot swaps stay valid
    for (int i = j + 1; i < n; ++i) {
      for (int k = j + 1; k <= i; ++k) {
        a(i, k) -= a(i, j) * col[k];
        if (k != i) a(k, i) = a(i, k);
      }
      flops += i - j;
    }
  }
  lower_ = std::move(a);
  cond_ = n == 0 ? 1.0 : dmax / dmin;
  if (n > 0 && (!std::isfinite(cond_) || cond_ > 1e13))
    throw GreenError(ErrorKind::IllConditioned,
                     "principal matrix too ill-conditioned for a trustworthy solve");
  count(0, flops);
}

void DirectSolver::count(std::uint64_t kernels, std::uint64_t flops) const {
  if (tally_) {
    tally_->kernel_evals += kernels;
    tally_->flops += flops;
  }
}

std::vector<Cx> DirectSolver::solve(std::vector<Cx> rhs) const {
  const int n = static_cast<int>(rhs.size());
  std::uint64_t flops = 0;
  auto solve_once = [&](const std::vector<Cx>& b) {
    std::vector<Cx> y(n);
    for (int i = 0; i < n; ++i) y[i] = b[perm_[i]];
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
      flops += i;
    }
    for (int i = 0; i < n; ++i) y[i] /= diag_[i];
    flops += n;
    for (int i = n - 1; i >= 0; --i) {
      for (int k = i + 1; k < n; ++k) y[i] -= lower_(k, i) * y[k];
      flops += n - 1 - i;
    }
    std::vector<Cx> x(n);
    for (int i = 0; i < n; ++i) x[perm_[i]] = y[i];
    return x;
  };
  std::vector<Cx> x = solve_once(rhs);
  // one refinement pass recovers the accuracy the factorization's element
  // growth can lose; the residual is computed against the unfactored matrix
  std::vector<Cx> r(n);
  for (int i = 0; i < n; ++i) {
    Cx acc = rhs[i];
    for (int k = 0; k < n; ++k) acc -= phi_(i, k) * x[k];
    r[i] = acc;
  }
  flops += static_cast<std::uint64_t>(n) * n;
  const std::vector<Cx> e = solve_once(r);
  for (int i = 0; i < n; ++i) x[i] += e[i];
  flops += n;
  count(0, flops);
  return x;
}

Cx DirectSolver::evaluate(const Coord& x, const Coord& y) const {
  const int n = size();
  const Cx g0 = backend_->g0_point(x, y, energy_);
  std::vector<Cx> fy(n);
  for (int i = 0; i < n; ++i) fy[i] = backend_->g0_field(centers_[i].support, y, energy_);
  std::vector<Cx> z = solve(fy);
  Cx acc = g0;
  for (int i = 0; i < n; ++i)
    acc += backend_->g0_field(centers_[i].support, x, energy_) * z[i];
  count(2 * static_cast<std::uint64_t>(n) + 1, n);
  return acc;
}

Cx direct_green(std::shared_ptr<const Backend> backend, const std::vector<Center>& centers,
                const Energy& energy, const Coord& x, const Coord& y,
                std::shared_ptr<Tally> tally) {
  DirectSolver solver(std::move(backend), centers, energy, std::move(tally));
  return solver.evaluate(x, y);
}

}  // namespace green
