// SPDX-License-Identifier: Apache-2.0
#include "rss/exponents.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "rss/optim.hpp"
#include "rss/renyi.hpp"

namespace rss {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergenceBand = 1e-4;
}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::zero: return "zero";
    case Regime::exact: return "exact";
    case Regime::bounds_only: return "bounds_only";
    case Regime::infinite: return "infinite";
  }
  return "?";
}

ExponentProvider make_provider(MiEvaluator& ev) {
  ExponentProvider p;
  p.i_alpha = [&ev](double alpha) { return ev.i_alpha(alpha); };
  p.i_vn = [&ev]() { return ev.i_vn(); };
  p.i_max = [&ev](bool* conv) { return ev.i_max(conv); };
  p.alpha_cap = ev.settings().alpha_ladder_cap;
  return p;
}

double lower_exponent_core(const ExponentProvider& p, double r, double* s_star) {
  if (r < 0) throw std::invalid_argument("lower_exponent: rate must be >= 0");
  if (s_star) *s_star = 0.0;
  if (r <= p.i_vn()) return 0.0;
  auto phi = [&](double s) { return s == 0.0 ? 0.0 : s * (r - p.i_alpha(1.0 + s)); };
  LineResult g = brent_max(phi, 0.0, 1.0, 1e-6);
  if (s_star) *s_star = g.x;
  return 0.5 * std::max(0.0, g.value);
}

ExponentValue upper_exponent_core(const ExponentProvider& p, double r) {
  if (r < 0) throw std::invalid_argument("upper_exponent: rate must be >= 0");
  ExponentValue out;
  if (r <= p.i_vn()) return out;

  bool imax_conv = false;
  const double imax = p.i_max(&imax_conv);
  if (r > imax + kDivergenceBand) {
    out.value = kInf;
    out.s_star = kInf;
    out.flagged = !imax_conv;
    return out;
  }
  out.flagged = std::abs(r - imax) <= kDivergenceBand;

  auto phi = [&](double s) { return s == 0.0 ? 0.0 : s * (r - p.i_alpha(1.0 + s)); };
  const double s_cap = p.alpha_cap - 1.0;

  // Probe a geometric ladder until the concave objective starts decreasing,
  // then refine on the surrounding bracket.
  std::vector<double> ss = {0.0, 0.25, 0.5, 1.0};
  std::vector<double> fs;
  for (double s : ss) fs.push_back(phi(s));
  double s_next = 2.0;
  while (fs.back() >= fs[fs.size() - 2] && ss.back() < s_cap) {
    ss.push_back(std::min(s_next, s_cap));
    fs.push_back(phi(ss.back()));
    s_next *= 2.0;
  }
  size_t m = 0;
  for (size_t i = 1; i < fs.size(); ++i)
    if (fs[i] > fs[m]) m = i;
  const double lo = m == 0 ? 0.0 : ss[m - 1];
  const double hi = m + 1 < ss.size() ? ss[m + 1] : ss[m];
  if (m + 1 == ss.size() && ss[m] >= s_cap) out.flagged = true;  // bracket capped

  LineResult g = brent_max(phi, lo, std::max(hi, lo + 1e-9), std::max(1e-6, 1e-7 * (hi - lo)));
  out.s_star = g.x;
  out.value = 0.5 * std::max(0.0, std::max(g.value, fs[m]));
  return out;
}

double lower_exponent(MiEvaluator& ev, double r, double* s_star) {
  ExponentProvider p = make_provider(ev);
  return lower_exponent_core(p, r, s_star);
}

ExponentValue upper_exponent(MiEvaluator& ev, double r) {
  ExponentProvider p = make_provider(ev);
  return upper_exponent_core(p, r);
}

CriticalRate critical_rate(MiEvaluator& ev) {
  auto g = [&](double s) { return s * ev.i_alpha(1.0 + s); };
  const double h = 1e-3;
  const double d1 = (g(1.0 + h) - g(1.0 - h)) / (2.0 * h);
  const double d2 = (g(1.0 + h / 2) - g(1.0 - h / 2)) / h;
  CriticalRate out;
  out.value = (4.0 * d2 - d1) / 3.0;
  out.uncertainty = std::abs(d2 - d1);
  out.flagged = out.uncertainty > 1e-2;
  return out;
}

CurvePoint exact_reliability(MiEvaluator& ev, double r, bool quantum_rate) {
  if (r < 0) throw std::invalid_argument("exact_reliability: rate must be >= 0");
  const double rr = quantum_rate ? 2.0 * r : r;
  CurvePoint pt;
  pt.r = rr;
  if (rr >= ev.teleportation_rate()) {
    pt.regime = Regime::infinite;
    pt.e_lower = kInf;
    pt.e_upper = kInf;
    return pt;
  }
  if (rr <= ev.i_vn()) {
    pt.regime = Regime::zero;
    return pt;
  }
  const double el = lower_exponent(ev, rr);
  if (rr <= critical_rate(ev).value) {
    pt.regime = Regime::exact;
    pt.e_lower = el;
    pt.e_upper = el;
    return pt;
  }
  pt.regime = Regime::bounds_only;
  pt.e_lower = el;
  // Both bounds estimate suprema of the same sampled objective; the queried
  // s-set of the lower bound is feasible for the upper one.
  pt.e_upper = std::max(upper_exponent(ev, rr).value, el);
  return pt;
}

BoundReport finite_n_bound(MiEvaluator& ev, long n, double r, std::optional<double> s) {
  if (n < 1) throw std::invalid_argument("finite_n_bound: n must be >= 1");
  if (r <= 0) throw std::invalid_argument("finite_n_bound: rate must be > 0");
  const double d = static_cast<double>(std::max(ev.channel().dim_in, ev.channel().dim_out));
  const double log2n1 = std::log2(static_cast<double>(n) + 1.0);
  auto log2f = [&](double sv) {
    return 0.5 * (std::log2(1.0 / sv) + (1.0 + sv) * (d + 1.0) * (d + 1.0) * log2n1);
  };
  auto log2bound = [&](double sv) {
    return log2f(sv) - 0.5 * static_cast<double>(n) * sv * (r - ev.i_alpha(1.0 + sv));
  };

  double s_star;
  if (s) {
    if (*s <= 0.0 || *s > 1.0) throw std::invalid_argument("finite_n_bound: s must be in (0,1]");
    s_star = *s;
  } else {
    LineResult g = golden_min(log2bound, 1e-6, 1.0, 1e-7);
    s_star = g.x;
  }
  BoundReport rep;
  rep.n = n;
  rep.r = r;
  rep.s_star = s_star;
  rep.prefactor = std::exp2(log2f(s_star));
  rep.exponent_bits = 0.5 * static_cast<double>(n) * s_star * (r - ev.i_alpha(1.0 + s_star));
  const double lb = log2f(s_star) - rep.exponent_bits;
  rep.clipped = lb >= 0.0;
  rep.bound_value = rep.clipped ? 1.0 : std::exp2(lb);
  return rep;
}

double one_shot_fixed_input_bound(const Channel& ch, const Matrix& rho_A,
                                  const Matrix& sigma_B, double c, double s) {
  if (s <= 0.0 || s > 1.0)
    throw std::invalid_argument("one_shot_fixed_input_bound: s must be in (0,1]");
  if (c <= 0.0) throw std::invalid_argument("one_shot_fixed_input_bound: c must be > 0");
  DensityOperator phi_rb = output_state(ch, rho_A);
  Matrix phi_r = partial_trace(phi_rb.matrix(), phi_rb.dims(), {0});
  Matrix ref = kron(phi_r, sigma_B);
  const int v = distinct_eigenvalue_count(ref);
  const double dval = d_alpha(phi_rb.matrix(), ref, 1.0 + s);
  if (std::isinf(dval)) return 1.0;  // support violation: vacuous bound
  const double lb = 0.5 * (s * std::log2(static_cast<double>(v)) - std::log2(s)) -
                    0.5 * s * (c - dval);
  return lb >= 0.0 ? 1.0 : std::exp2(lb);
}

Curve make_curve(MiEvaluator& ev, double r_min, double r_max, int steps, bool quantum_rate) {
  if (steps < 2) throw std::invalid_argument("curve: steps must be >= 2");
  if (!(r_min < r_max)) throw std::invalid_argument("curve: r_min must be < r_max");
  Curve c;
  c.channel_label = ev.channel().label;
  c.annotations.i_vn = ev.i_vn();
  c.annotations.i2 = ev.i_alpha(2.0);
  c.annotations.r_critical = critical_rate(ev).value;
  c.annotations.i_max = ev.i_max(&c.annotations.i_max_converged);
  c.annotations.teleport = ev.teleportation_rate();
  c.points.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double r = r_min + (r_max - r_min) * static_cast<double>(i) / (steps - 1);
    c.points.push_back(exact_reliability(ev, r, quantum_rate));
  }
  return c;
}

namespace {

std::string fmt_g(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

}  // namespace

void write_curve_csv(std::ostream& os, const Curve& curve, int precision) {
  os << "# channel=" << curve.channel_label << "\n";
  os << "# I=" << fmt_g(curve.annotations.i_vn, precision)
     << ", I2=" << fmt_g(curve.annotations.i2, precision)
     << ", Rcrit=" << fmt_g(curve.annotations.r_critical, precision)
     << ", Imax=" << fmt_g(curve.annotations.i_max, precision)
     << ", teleport=" << fmt_g(curve.annotations.teleport, precision) << "\n";
  os << "r,e_lower,e_upper,regime\n";
  for (const auto& p : curve.points) {
    os << fmt_g(p.r, precision) << "," << fmt_g(p.e_lower, precision) << ","
       << fmt_g(p.e_upper, precision) << "," << regime_name(p.regime) << "\n";
  }
}

}  // namespace rss
