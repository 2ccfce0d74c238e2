// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_MUTINFO_HPP
#define RSS_MUTINFO_HPP

#include <map>
#include <optional>

#include "rss/channels.hpp"
#include "rss/linalg.hpp"
#include "rss/settings.hpp"

namespace rss {

struct MutualInfoResult {
  double value = 0.0;       // bits
  Matrix minimizer_sigma;   // optimal sigma_B
  Matrix maximizer_input;   // optimal rho_A (channel case; empty otherwise)
  bool converged = false;
  double restart_spread = 0.0;  // bits
};

// Sandwiched Renyi mutual information of a bipartite state (dims = {R, B}),
// alpha in (1, 2] supported (larger alpha accepted for ladder estimates).
MutualInfoResult state_mi_alpha(const DensityOperator& rho_rb, double alpha,
                                const SolverSettings& settings);

// von Neumann mutual information S(R) + S(B) - S(RB); exact, no optimization.
double state_mi_vn(const DensityOperator& rho_rb);

// Max-information: min over sigma_B of D_max(rho_RB || rho_R ⊗ sigma_B).
double max_information(const DensityOperator& rho_rb, const SolverSettings& settings);

// Channel quantities: maximization over input states (purifications have
// |R| = dim_in). The per-input value is evaluated through the Choi form.
MutualInfoResult channel_mi_alpha(const Channel& ch, double alpha,
                                  const SolverSettings& settings);
MutualInfoResult channel_mi_vn(const Channel& ch, const SolverSettings& settings);

// Ladder estimate of I_max = lim I_alpha: alpha = 2, 4, ..., alpha_ladder_cap
// until successive increments fall below 1e-4 bits. converged=false when the
// cap is hit first.
MutualInfoResult channel_mi_max(const Channel& ch, const SolverSettings& settings);

// Per-input channel Renyi mutual information I_alpha(ch, rho_A).
MutualInfoResult channel_mi_alpha_fixed_input(const Channel& ch, const Matrix& rho_A,
                                              double alpha, const SolverSettings& settings);

// Memoizing evaluator for repeated I_{1+s} queries on one channel; chains
// warm starts across queries. Used by the exponent machinery.
class MiEvaluator {
 public:
  MiEvaluator(Channel ch, SolverSettings settings);

  double i_alpha(double alpha);  // bits
  double i_vn();
  double i2() { return i_alpha(2.0); }
  double i_max(bool* converged = nullptr);
  double teleportation_rate() const;  // 2 log2 min(|A|, |B|)

  const Channel& channel() const { return ch_; }
  const SolverSettings& settings() const { return settings_; }
  bool all_converged() const { return all_converged_; }

 private:
  Channel ch_;
  SolverSettings settings_;
  std::map<double, double> memo_;
  std::optional<double> vn_;
  std::optional<double> imax_;
  bool imax_converged_ = false;
  bool all_converged_ = true;
  Matrix warm_input_;  // chained outer warm start (in transposed coordinates)
  friend MutualInfoResult channel_mi_core(const Channel&, double, const SolverSettings&,
                                          const Matrix*, int, Matrix*, bool);
};

}  // namespace rss

#endif
