// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_CHANNELS_HPP
#define RSS_CHANNELS_HPP

#include <map>
#include <string>
#include <vector>

#include "rss/linalg.hpp"
#include "rss/random.hpp"
#include "rss/settings.hpp"

namespace rss {

// CPTP map stored as a Kraus list of dim_out x dim_in matrices.
struct Channel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<Matrix> kraus;
  std::string label;

  // Validates trace preservation (1e-10) and complete positivity via the Choi
  // spectrum (eigenvalues >= -1e-10); throws std::invalid_argument otherwise.
  static Channel make(int dim_in, int dim_out, std::vector<Matrix> kraus,
                      std::string label = "");

  // No validation; for report-only workflows on possibly defective data.
  static Channel unchecked(int dim_in, int dim_out, std::vector<Matrix> kraus,
                           std::string label = "");
};

struct ChannelValidation {
  double tp_residual = 0.0;   // ‖sum K†K - I‖_max
  double min_choi_eig = 0.0;  // most negative Choi eigenvalue (>= 0 when CP)
  bool trace_preserving(double tol = 1e-10) const { return tp_residual <= tol; }
  bool completely_positive(double tol = 1e-10) const { return min_choi_eig >= -tol; }
  bool ok(double tol = 1e-10) const { return trace_preserving(tol) && completely_positive(tol); }
};

ChannelValidation validate(const Channel& ch);

struct StinespringIsometry {
  int dim_in = 0;
  int dim_out = 0;
  int dim_env = 0;
  Matrix matrix;  // (dim_out * dim_env) x dim_in, rows indexed (b, e) with e minor
};

Matrix apply(const Channel& ch, const Matrix& rho);
DensityOperator apply(const Channel& ch, const DensityOperator& rho);

// id_R ⊗ ch applied to the eigenbasis purification of rho_A; |R| = dim_in.
DensityOperator output_state(const Channel& ch, const Matrix& rho_A);

// Unnormalized Choi matrix sum_ij |i><j| ⊗ ch(|i><j|) on R⊗B.
Matrix choi_unnormalized(const Channel& ch);
// Normalized Choi state (trace 1) with dims {dim_in, dim_out}.
DensityOperator choi_state(const Channel& ch);

StinespringIsometry stinespring(const Channel& ch);

// Pairwise Kronecker Kraus list; product dimensions guarded to 4096.
Channel tensor(const Channel& a, const Channel& b);

// Canonical families: identity(d), depolarizing(d, p), dephasing(p),
// amplitude_damping(gamma), pauli(px, py, pz).
Channel canonical_channel(const std::string& name,
                          const std::map<std::string, double>& params = {});

// Group average (1/n!) sum_pi W^(pi^-1) ∘ ch ∘ W^pi over S_n, realized exactly
// on the Kraus list (each operator scaled by 1/sqrt(n!)). Requires
// dim_in = dA^n, dim_out = dB^n, n <= 3.
Channel symmetrize(const Channel& ch, int n, int dA, int dB);

// Haar-random channel from a random Stinespring isometry.
Channel random_channel(int dim_in, int dim_out, int kraus_rank, Rng& rng);

struct ChannelDistanceResult {
  double value = 0.0;          // best found max_phi P(id⊗m(phi), id⊗n(phi))
  Vector witness;              // maximizing pure input on R⊗A
  double restart_spread = 0.0; // best - worst restart value
  int starts = 0;
  bool certified = false;      // always false: multi-start lower-bound estimate
};

// Worst-case purified distance between channels, estimated by multi-start
// local search over pure inputs with |R| = dim_in. Uses 2x settings.multistarts
// starts (16 at defaults).
ChannelDistanceResult channel_purified_distance(const Channel& m, const Channel& n,
                                                const SolverSettings& settings);

// Max-norm distance between normalized Choi matrices (test metric).
double choi_distance(const Channel& a, const Channel& b);

// id_R ⊗ ch applied to a pure vector on R⊗A; the reference dimension is
// inferred from the vector length.
DensityOperator apply_with_reference(const Channel& ch, const Vector& psi_ra);

}  // namespace rss

#endif
