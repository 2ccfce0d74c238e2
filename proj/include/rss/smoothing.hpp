// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_SMOOTHING_HPP
#define RSS_SMOOTHING_HPP

#include <vector>

#include "rss/channels.hpp"
#include "rss/exponents.hpp"
#include "rss/linalg.hpp"
#include "rss/settings.hpp"

namespace rss {

struct SmoothingResult {
  double delta = 0.0;            // purified distance, in [0,1]
  Matrix optimizer_state;        // rho_tilde
  Matrix optimizer_sigma;        // sigma_B
  double oracle_gap = 0.0;       // internal sampling oracle minus delta (>= 0)
  double feasibility_residual = 0.0;  // max(0, lambda_max(w^-1/2 rt w^-1/2) - 2^l)
  bool converged = false;
};

// Smoothing quantity for the max-information:
//   min P(rho_tilde, rho) over states rho_tilde, sigma_B
//   subject to rho_tilde <= 2^lambda rho_R ⊗ sigma_B.
// The dominance constraint is exact by construction: rho_tilde =
// omega^(1/2) X omega^(1/2) with the eigenvalues of X squashed into
// (0, 2^lambda) and the unit trace restored by an exact spectral shift.
// warm, if given, seeds the search (used for lambda grids).
SmoothingResult delta_smooth(const DensityOperator& rho_rb, double lambda,
                             const SolverSettings& settings,
                             const SmoothingResult* warm = nullptr);

// Ascending-lambda chain of delta_smooth with warm starts, returned in the
// order of the input grid.
std::vector<SmoothingResult> delta_grid(const DensityOperator& rho_rb,
                                        const std::vector<double>& lambdas,
                                        const SolverSettings& settings);

// (1/2) sup_{s>=0} s (r - I_{1+s}(R:B)); +inf when r exceeds the
// max-information of the state.
ExponentValue delta_exponent(const DensityOperator& rho_rb, double r,
                             const SolverSettings& settings);

// One-shot converse floor: delta_smooth on the channel output at lambda = c.
SmoothingResult converse_floor(const Channel& ch, const Matrix& rho_A, double c,
                               const SolverSettings& settings);

}  // namespace rss

#endif
