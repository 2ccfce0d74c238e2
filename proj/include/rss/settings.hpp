// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_SETTINGS_HPP
#define RSS_SETTINGS_HPP

#include <cstdint>
#include <stdexcept>

namespace rss {

// Knobs shared by every iterative routine. Deterministic: restart k of any
// multi-start search draws from seed ^ k.
struct SolverSettings {
  double inner_tol = 1e-9;         // bits, inner sigma minimization
  double outer_tol = 1e-7;         // bits, outer input maximization
  int max_iter = 10000;            // per local search
  int multistarts = 8;
  std::uint64_t seed = 1;
  double alpha_ladder_cap = 1024.0;

  void check() const {
    if (inner_tol <= 0 || outer_tol <= 0) throw std::invalid_argument("settings: tolerances must be > 0");
    if (multistarts < 1) throw std::invalid_argument("settings: multistarts must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("settings: max_iter must be >= 1");
    if (alpha_ladder_cap <= 2) throw std::invalid_argument("settings: alpha_ladder_cap must be > 2");
  }
};

}  // namespace rss

#endif
