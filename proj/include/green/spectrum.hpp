#pragma once

#include <memory>
#include <vector>

#include "green/backend.hpp"
#include "green/config.hpp"

namespace green {

struct BoundState {
  double energy = 0.0;
  int multiplicity = 1;
  double residual = 0.0;  // |closest-to-zero eigenvalue of Phi| at the root
  bool at_edge = false;
};

struct ScanOptions {
  double e_lo = 0.0;  // <= 0; 0 means choose from the coupling scales
  double e_hi = -1e-6;
  int grid = 512;
  double tol = 1e-10;  // relative, in E
};

struct SpectralScan {
  double e_lo = 0.0, e_hi = 0.0;
  int grid = 0;
  double tol = 0.0;
  std::vector<BoundState> roots;  // ascending energy
};

// smallest eigenvalue of the symmetric Phi(E); +inf for an empty center list
double char_value(const Backend& backend, const std::vector<Center>& centers, double E);

// number of negative eigenvalues of Phi(E); increments by one (counting
// multiplicity) at each bound state as E increases toward zero
int negative_count(const Backend& backend, const std::vector<Center>& centers, double E);

SpectralScan find_bound_states(const std::shared_ptr<const Backend>& backend,
                               const std::vector<Center>& centers,
                               const ScanOptions& opts = {});

}  // namespace green
