#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "green/backend.hpp"
#include "green/config.hpp"

namespace green {

// Phi(E): diagonal 1/c - B_ii (bare, c the effective coupling) or the
// renormalized diagonal from the backend; off-diagonal -B_ij.
Eigen::MatrixXcd build_principal_matrix(const Backend& backend,
                                        const std::vector<Center>& centers, const Energy& E,
                                        Tally* tally = nullptr);

// Immutable n-center state. Invariant, for all probes off the supports:
//   G(x,y) = G0(x,y) + sum_ij G0(x,v_i) W_ij G0(v_j,y)
// extended() grows W by one row/column via a bordering update; the receiver
// is never mutated.
class GreenState {
 public:
  static GreenState init(std::shared_ptr<const Backend> backend, Energy energy,
                         std::shared_ptr<Tally> tally = nullptr);

  GreenState extended(const Center& c) const;

  Cx evaluate(const Coord& x, const Coord& y) const;

  // <v|G|w> = B(v,w) + sum_ij B(v,v_i) W_ij B(v_j,w); pass same=true only
  // when v and w denote the identical support (diagonal quadrature differs)
  Cx bilinear(const Support& v, const Support& w, bool same = false) const;

  // denominator the next extension by c would divide by: 1 - c G(v,v) for
  // bare couplings, Phi_loc - g^T W g for renormalized ones
  Cx denominator(const Center& c) const;

  int size() const { return static_cast<int>(centers_.size()); }
  const Energy& energy() const { return energy_; }
  const std::vector<Center>& centers() const { return centers_; }
  const Eigen::MatrixXcd& weights() const { return W_; }
  const Backend& backend() const { return *backend_; }

 private:
  GreenState(std::shared_ptr<const Backend> backend, Energy energy, std::shared_ptr<Tally> tally)
      : backend_(std::move(backend)), energy_(energy), tally_(std::move(tally)) {}

  struct Border {
    std::vector<Cx> g;  // B(v_i, v_new)
    std::vector<Cx> t;  // W g
    Cx q;               // g^T W g
    Cx factor;          // c/D or 1/D_r; the bordering corner weight
    Cx denom;
    double pole_scale = 1.0;
  };
  Border border(const Center& c) const;
  void count(std::uint64_t kernels, std::uint64_t flops) const;

  std::shared_ptr<const Backend> backend_;
  Energy energy_;
  std::vector<Center> centers_;
  Eigen::MatrixXcd W_;
  std::shared_ptr<Tally> tally_;
};

// Independent evaluation path: factors Phi(E) once (complex-symmetric LDL^T
// with symmetric diagonal pivoting), then answers probes by linear solves
// with one step of iterative refinement.
class DirectSolver {
 public:
  DirectSolver(std::shared_ptr<const Backend> backend, std::vector<Center> centers,
               Energy energy, std::shared_ptr<Tally> tally = nullptr);

  Cx evaluate(const Coord& x, const Coord& y) const;
  double condition_estimate() const { return cond_; }
  int size() const { return static_cast<int>(centers_.size()); }

 private:
  std::vector<Cx> solve(std::vector<Cx> rhs) const;
  void count(std::uint64_t kernels, std::uint64_t flops) const;

  std::shared_ptr<const Backend> backend_;
  Energy energy_;
  std::vector<Center> centers_;
  Eigen::MatrixXcd phi_;    // unfactored Phi, kept for the refinement residual
  Eigen::MatrixXcd lower_;  // unit lower-triangular factor of P Phi P^T, strict part
  std::vector<Cx> diag_;
  std::vector<int> perm_;   // perm_[j] = original index of pivot row j
  double cond_ = 0.0;
  std::shared_ptr<Tally> tally_;
};

Cx direct_green(std::shared_ptr<const Backend> backend, const std::vector<Center>& centers,
                const Energy& energy, const Coord& x, const Coord& y,
                std::shared_ptr<Tally> tally = nullptr);

}  // namespace green
