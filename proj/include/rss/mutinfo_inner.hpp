// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_MUTINFO_INNER_HPP
#define RSS_MUTINFO_INNER_HPP

#include "rss/linalg.hpp"
#include "rss/settings.hpp"

namespace rss::inner {

// min over states sigma_B of D_alpha(rho_RB || rho_R ⊗ sigma_B), alpha > 1.
// rho_R is the exact marginal of rho, so support issues can only enter
// through sigma.
struct Problem {
  Matrix rho;   // dR*dB x dR*dB, Hermitian PSD, trace 1
  int dim_r = 0;
  int dim_b = 0;
  double alpha = 2.0;

  Matrix rho_r;          // marginal
  EighResult rho_r_eig;  // cached
  Matrix rho_r_gamma;    // rho_R^((1-a)/2a) on the support

  Problem(Matrix rho_rb, int dr, int db, double a);

  // Divergence in bits at sigma (pseudo-powers on supp(sigma); +inf when rho
  // has mass outside supp(rho_R ⊗ sigma)).
  double objective(const Matrix& sigma) const;

  // Objective and its gradient with respect to sigma (Hermitian matrix of
  // partial derivatives in bits).
  double objective_grad(const Matrix& sigma, Matrix* grad) const;
};

struct Result {
  double value = 0.0;
  Matrix sigma;
  bool converged = false;
  int evals = 0;
};

// Derivative-free reference path: simplex descent on the Cholesky-factor
// parametrization, multi-start from the marginal rho_B and from I/|B|,
// followed by a bounded gradient polish.
Result solve_reference(const Problem& p, const SolverSettings& s, double* start_spread = nullptr);

// Accelerated path: mirror descent with exact gradients, warm-startable.
// Must agree with solve_reference within settings.inner_tol.
Result solve_fast(const Problem& p, const SolverSettings& s, const Matrix* warm = nullptr);

// Cholesky-factor parametrization sigma = L L† / tr(L L†) used by the
// reference path and the outer searches.
Eigen::VectorXd chol_params(const Matrix& density);
Matrix density_from_params(const Eigen::VectorXd& theta, int d);

}  // namespace rss::inner

#endif
