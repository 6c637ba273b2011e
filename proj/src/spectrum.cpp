#include "green/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "green/engine.hpp"

namespace green {

namespace {

Eigen::VectorXd phi_eigenvalues(const Backend& backend, const std::vector<Center>& centers,
                                double E) {
  const Energy en = Energy::bound_side(E);
  const Eigen::MatrixXcd phi = build_principal_matrix(backend, centers, en, nullptr);
  const int n = static_cast<int>(centers.size());
  double scale = 1.0, imag_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(phi(i, j)));
      imag_max = std::max(imag_max, std::fabs(phi(i, j).imag()));
    }
  if (imag_max > 1e-10 * scale)
    throw GreenError(ErrorKind::Internal, "principal matrix not real at real energy");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi.real());
  if (es.info() != Eigen::Success)
    throw GreenError(ErrorKind::Numerical, "eigenvalue solve failed");
  return es.eigenvalues();
}

// deepest bound state any single center of this family could produce, used
// to seed the automatic lower edge of the scan window
double coupling_scale(const Backend& backend, const std::vector<Center>& centers) {
  double kappa = 1.0;
  const double pref = backend.units().kernel_prefactor();
  for (const auto& c : centers) {
    if (const auto* rc = std::get_if<RenormCoupling>(&c.coupling)) {
      kappa = std::max(kappa, rc->mu);
    } else {
      const double cc = effective_coupling(c.support, std::get<BareCoupling>(c.coupling));
      kappa = std::max(kappa, std::fabs(cc) * pref);
    }
  }
  return kappa;
}

}  // namespace

double char_value(const Backend& backend, const std::vector<Center>& centers, double E) {
  if (centers.empty()) return std::numeric_limits<double>::infinity();
  return phi_eigenvalues(backend, centers, E)(0);
}

int negative_count(const Backend& backend, const std::vector<Center>& centers, double E) {
  if (centers.empty()) return 0;
  const Eigen::VectorXd ev = phi_eigenvalues(backend, centers, E);
  int nu = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0) ++nu;
  return nu;
}

SpectralScan find_bound_states(const std::shared_ptr<const Backend>& backend,
                               const std::vector<Center>& centers, const ScanOptions& opts) {
  if (!backend) throw GreenError(ErrorKind::Internal, "null backend");
  if (opts.grid < 2) throw GreenError(ErrorKind::Validation, "scan grid must have >= 2 points");
  if (!(opts.e_hi < 0.0)) throw GreenError(ErrorKind::Validation, "scan window must lie in E < 0");

  SpectralScan out;
  out.grid = opts.grid;
  out.tol = opts.tol;
  out.e_hi = opts.e_hi;
  out.e_lo = opts.e_lo;
  if (centers.empty()) return out;

  auto nu_at = [&](double E) { return negative_count(*backend, centers, E); };

  if (!(out.e_lo < 0.0)) {
    const double k = coupling_scale(*backend, centers);
    out.e_lo = -10.0 * k * k;
    // push the automatic lower edge down until no bound state lies below it;
    // an explicit e_lo is honored and states below it surface as an at_edge row
    for (int tries = 0; nu_at(out.e_lo) > 0 && tries < 8; ++tries) out.e_lo *= 10.0;
  }
  if (out.e_lo >= out.e_hi)
    throw GreenError(ErrorKind::Validation, "scan window is empty");

  const int n = opts.grid;
  std::vector<double> grid(n);
  const double la = std::log(-out.e_lo), lb = std::log(-out.e_hi);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    grid[k] = -std::exp((1.0 - s) * la + s * lb);
  }

  int nu_prev = nu_at(grid[0]);
  if (nu_prev > 0)
    out.roots.push_back({grid[0], nu_prev, std::fabs(char_value(*backend, centers, grid[0])),
                         true});

  std::vector<double> found;
  for (int k = 1; k < n; ++k) {
    const int nu_next = nu_at(grid[k]);
    for (int m = nu_prev + 1; m <= nu_next; ++m) {
      double a = grid[k - 1], b = grid[k];  // nu(a) < m <= nu(b)
      for (int it = 0; it < 200 && (b - a) > opts.tol * std::max(1.0, std::fabs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        if (nu_at(mid) >= m)
          b = mid;
        else
          a = mid;
      }
      found.push_back(0.5 * (a + b));
    }
    nu_prev = std::max(nu_prev, nu_next);
  }

  std::sort(found.begin(), found.end());
  const double cluster = 100.0 * opts.tol;
  for (std::size_t i = 0; i < found.size();) {
    std::size_t j = i + 1;
    while (j < found.size() &&
           found[j] - found[i] < cluster * std::max(1.0, std::fabs(found[i])))
      ++j;
    BoundState bs;
    bs.energy = found[i + (j - i) / 2];
    bs.multiplicity = static_cast<int>(j - i);
    const Eigen::VectorXd ev = phi_eigenvalues(*backend, centers, bs.energy);
    double r = std::numeric_limits<double>::infinity();
    for (int q = 0; q < ev.size(); ++q) r = std::min(r, std::fabs(ev(q)));
    bs.residual = r;
    bs.at_edge = false;
    out.roots.push_back(bs);
    i = j;
  }

  // a branch sitting at zero on the upper edge means a root at or beyond it
  if (!centers.empty()) {
    const Eigen::VectorXd ev = phi_eigenvalues(*backend, centers, out.e_hi);
    double nearest = std::numeric_limits<double>::infinity();
    for (int q = 0; q < ev.size(); ++q) nearest = std::min(nearest, std::fabs(ev(q)));
    const bool already = !out.roots.empty() &&
                         std::fabs(out.roots.back().energy - out.e_hi) <
                             1e3 * opts.tol * std::max(1.0, std::fabs(out.e_hi));
    if (!already && nearest < 1e-12) out.roots.push_back({out.e_hi, 1, nearest, true});
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const BoundState& x, const BoundState& y) { return x.energy < y.energy; });
  return out;
}

}  // namespace green
