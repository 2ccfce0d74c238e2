// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_EXPONENTS_HPP
#define RSS_EXPONENTS_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rss/mutinfo.hpp"

namespace rss {

enum class Regime { zero, exact, bounds_only, infinite };
const char* regime_name(Regime r);

struct CurvePoint {
  double r = 0.0;        // classical bits per channel use
  double e_lower = 0.0;  // bits
  double e_upper = 0.0;  // bits, may be +inf
  Regime regime = Regime::zero;
};

struct BoundReport {
  long n = 0;
  double r = 0.0;
  double s_star = 0.0;        // in (0, 1]
  double prefactor = 0.0;     // f(n, s*)
  double exponent_bits = 0.0; // (n/2) s* (r - I_{1+s*})
  double bound_value = 1.0;   // min(1, prefactor * 2^-exponent_bits)
  bool clipped = false;
};

struct ExponentValue {
  double value = 0.0;  // bits, may be +inf
  double s_star = 0.0;
  bool flagged = false;  // ambiguous divergence band or bracket cap
};

struct CriticalRate {
  double value = 0.0;
  double uncertainty = 0.0;
  bool flagged = false;
};

// Abstracts the Renyi mutual information source so the same 1-D machinery
// serves channels and fixed bipartite states.
struct ExponentProvider {
  std::function<double(double)> i_alpha;    // argument is alpha = 1 + s
  std::function<double()> i_vn;
  std::function<double(bool*)> i_max;       // estimate; flag reports convergence
  double alpha_cap = 1024.0;
};

ExponentProvider make_provider(MiEvaluator& ev);

// (1/2) max_{0<=s<=1} s (r - I_{1+s}); zero for r <= I.
double lower_exponent_core(const ExponentProvider& p, double r, double* s_star = nullptr);
// (1/2) sup_{s>=0} s (r - I_{1+s}); +inf when r exceeds the I_max estimate by
// more than 1e-4; the band |r - I_max| <= 1e-4 is flagged as ambiguous.
ExponentValue upper_exponent_core(const ExponentProvider& p, double r);

double lower_exponent(MiEvaluator& ev, double r, double* s_star = nullptr);
ExponentValue upper_exponent(MiEvaluator& ev, double r);

// d/ds [ s I_{1+s} ] at s = 1 by central differences (h = 1e-3) with one
// Richardson step; uncertainty is the difference of the two estimates.
CriticalRate critical_rate(MiEvaluator& ev);

// Regime classification. quantum_rate interprets r as qubits per use and
// doubles it (teleportation/dense-coding conversion). Returned r is always in
// classical bits.
CurvePoint exact_reliability(MiEvaluator& ev, double r, bool quantum_rate = false);

// Achievability bound for n channel uses at rate r. If s is not given the
// bound is minimized over s in (0, 1].
BoundReport finite_n_bound(MiEvaluator& ev, long n, double r,
                           std::optional<double> s = std::nullopt);

// One-shot fixed-input bound sqrt(v^s/s) 2^{-(s/2)(c - D_{1+s})} with v the
// distinct-eigenvalue count of phi_R ⊗ sigma_B; clipped to 1.
double one_shot_fixed_input_bound(const Channel& ch, const Matrix& rho_A,
                                  const Matrix& sigma_B, double c, double s);

struct CurveAnnotations {
  double i_vn = 0.0;
  double i2 = 0.0;
  double r_critical = 0.0;
  double i_max = 0.0;
  double teleport = 0.0;
  bool i_max_converged = false;
};

struct Curve {
  std::string channel_label;
  CurveAnnotations annotations;
  std::vector<CurvePoint> points;
};

Curve make_curve(MiEvaluator& ev, double r_min, double r_max, int steps,
                 bool quantum_rate = false);

void write_curve_csv(std::ostream& os, const Curve& curve, int precision = 12);

}  // namespace rss

#endif
