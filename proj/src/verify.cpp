// SPDX-License-Identifier: Apache-2.0
#include "rss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "rss/channels.hpp"
#include "rss/exponents.hpp"
#include "rss/linalg.hpp"
#include "rss/mutinfo.hpp"
#include "rss/random.hpp"
#include "rss/smoothing.hpp"

namespace rss {

namespace {

std::vector<std::pair<Channel, Channel>> canonical_pairs() {
  return {
      {canonical_channel("depolarizing", {{"d", 2}, {"p", 0.3}}),
       canonical_channel("amplitude_damping", {{"gamma", 0.4}})},
      {canonical_channel("identity", {{"d", 2}}), canonical_channel("dephasing", {{"p", 0.5}})},
      {canonical_channel("amplitude_damping", {{"gamma", 0.3}}),
       canonical_channel("amplitude_damping", {{"gamma", 0.7}})},
      {canonical_channel("depolarizing", {{"d", 2}, {"p", 0.1}}),
       canonical_channel("pauli", {{"px", 0.1}, {"py", 0.05}, {"pz", 0.15}})},
      {canonical_channel("dephasing", {{"p", 0.2}}),
       canonical_channel("depolarizing", {{"d", 2}, {"p", 0.5}})},
  };
}

std::vector<Channel> test_channels() {
  return {
      canonical_channel("depolarizing", {{"d", 2}, {"p", 0.2}}),
      canonical_channel("amplitude_damping", {{"gamma", 0.4}}),
      canonical_channel("dephasing", {{"p", 0.3}}),
      canonical_channel("pauli", {{"px", 0.1}, {"py", 0.05}, {"pz", 0.15}}),
  };
}

// Additivity of the channel Renyi mutual information across tensor products:
// the tensor value is compared with the sum of the factors. The design choice
// for the tensor maximization is a 16-restart stress test.
SuiteReport suite_additivity(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "bits";
  rep.tolerance = 1e-4;
  const auto pairs = canonical_pairs();
  const int n = instances > 0 ? std::min<int>(instances, pairs.size()) : 2;
  const std::vector<double> alphas = {1.3, 1.7, 2.0};
  SolverSettings tensor_settings = settings;
  tensor_settings.multistarts = std::max(16, settings.multistarts);
  for (int k = 0; k < n; ++k) {
    const auto& [n1, n2] = pairs[k];
    Channel prod = tensor(n1, n2);
    for (double a : alphas) {
      const double v1 = channel_mi_alpha(n1, a, settings).value;
      const double v2 = channel_mi_alpha(n2, a, settings).value;
      const double v12 = channel_mi_alpha(prod, a, tensor_settings).value;
      rep.max_violation = std::max(rep.max_violation, std::abs(v12 - v1 - v2));
      ++rep.instances;
    }
  }
  return rep;
}

SuiteReport suite_alpha_monotone(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "bits";
  rep.tolerance = 1e-6;
  auto channels = test_channels();
  const int n = instances > 0 ? std::min<int>(instances, channels.size()) : 4;
  for (int k = 0; k < n; ++k) {
    MiEvaluator ev(channels[k], settings);
    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
      const double alpha = 1.05 + 0.095 * i;
      const double v = ev.i_alpha(alpha);
      if (i > 0) rep.max_violation = std::max(rep.max_violation, prev - v);
      prev = v;
    }
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_s_convexity(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "bits";
  rep.tolerance = 1e-6;
  auto channels = test_channels();
  const int n = instances > 0 ? std::min<int>(instances, channels.size()) : 2;
  for (int k = 0; k < n; ++k) {
    MiEvaluator ev(channels[k], settings);
    std::vector<double> g;
    for (int i = 0; i < 10; ++i) {
      const double s = 0.1 + 0.2 * i;
      g.push_back(s * ev.i_alpha(1.0 + s));
    }
    for (size_t i = 0; i + 2 < g.size(); ++i)
      rep.max_violation = std::max(rep.max_violation, g[i + 1] - 0.5 * (g[i] + g[i + 2]));
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_input_concavity(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "bits";
  rep.tolerance = 1e-6;
  const int n = instances > 0 ? instances : 20;
  auto channels = test_channels();
  const std::vector<double> alphas = {1.3, 1.5, 2.0};
  for (int k = 0; k < n; ++k) {
    Rng rng(mix_seed(settings.seed, 0xc0 + k));
    const Channel& ch = channels[k % channels.size()];
    const double alpha = alphas[k % alphas.size()];
    Matrix rho = random_density_hs(2, rng);
    Matrix sig = random_density_hs(2, rng);
    const double lam = 0.2 + 0.6 * rng.uniform();
    Matrix mix = lam * rho + (1.0 - lam) * sig;
    const double vm = channel_mi_alpha_fixed_input(ch, mix, alpha, settings).value;
    const double vr = channel_mi_alpha_fixed_input(ch, rho, alpha, settings).value;
    const double vs = channel_mi_alpha_fixed_input(ch, sig, alpha, settings).value;
    rep.max_violation = std::max(rep.max_violation, lam * vr + (1.0 - lam) * vs - vm);
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_symmetric_minimizer(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "trace-distance";
  rep.tolerance = 1e-6;
  const int n = instances > 0 ? instances : 20;
  for (int k = 0; k < n; ++k) {
    Rng rng(mix_seed(settings.seed, 0x5e0 + k));
    Channel nch = random_channel(2, 2, 2, rng);
    Channel sq = tensor(nch, nch);
    Matrix a = random_density_hs(2, rng);
    Matrix b = random_density_hs(2, rng);
    Matrix input = 0.5 * (kron(a, b) + kron(b, a));  // swap-invariant
    DensityOperator joint = output_state(sq, input);
    MutualInfoResult res = state_mi_alpha(joint, 1.5, settings);
    Matrix swapped = permute_subsystems(res.minimizer_sigma, {2, 2}, {1, 0});
    rep.max_violation =
        std::max(rep.max_violation, 0.5 * trace_norm(res.minimizer_sigma - swapped));
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_symmetrization(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "trace-distance";
  rep.tolerance = 1e-6;
  const int n = instances > 0 ? instances : 20;
  Channel target = tensor(canonical_channel("dephasing", {{"p", 0.5}}),
                          canonical_channel("dephasing", {{"p", 0.5}}));
  for (int k = 0; k < n; ++k) {
    Rng rng(mix_seed(settings.seed, 0x57a + k));
    Channel m = random_channel(4, 4, 3, rng);
    Channel msym = symmetrize(m, 2, 2, 2);
    SolverSettings s = settings;
    s.seed = mix_seed(settings.seed, 0x57a00 + k);
    const double before = channel_purified_distance(m, target, s).value;
    const double after = channel_purified_distance(msym, target, s).value;
    rep.max_violation = std::max(rep.max_violation, after - before);
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_de_finetti(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "trace-distance";
  rep.tolerance = 1e-6;
  const int n = instances > 0 ? instances : 20;
  const double g = static_cast<double>(symmetric_subspace_dim(2, 4));
  PureState zeta = purify(de_finetti_state(2, 2));
  for (int k = 0; k < n; ++k) {
    Rng rng(mix_seed(settings.seed, 0xdef + k));
    Channel nch = random_channel(2, 2, 2, rng);
    Channel e = tensor(nch, nch);
    Channel m = symmetrize(random_channel(4, 4, 3, rng), 2, 2, 2);
    SolverSettings s = settings;
    s.seed = mix_seed(settings.seed, 0xdef00 + k);
    const double lhs = channel_purified_distance(m, e, s).value;
    const double rhs =
        purified_distance(apply_with_reference(m, zeta.amplitudes).matrix(),
                          apply_with_reference(e, zeta.amplitudes).matrix());
    rep.max_violation = std::max(rep.max_violation, lhs - std::sqrt(g) * rhs);
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_exponent_consistency(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "bits";
  rep.tolerance = 1e-6;
  std::vector<Channel> channels = {
      canonical_channel("amplitude_damping", {{"gamma", 0.3}}),
      canonical_channel("depolarizing", {{"d", 2}, {"p", 0.2}}),
  };
  const int n = instances > 0 ? std::min<int>(instances, channels.size()) : 2;
  for (int k = 0; k < n; ++k) {
    MiEvaluator ev(channels[k], settings);
    const double ivn = ev.i_vn();
    const double i2 = ev.i2();
    const double rcrit = critical_rate(ev).value;
    bool imax_conv = false;
    const double imax = ev.i_max(&imax_conv);
    const double teleport = ev.teleportation_rate();

    // Exact regime: the two bounds coincide.
    for (int i = 0; i < 4; ++i) {
      const double r = ivn + (rcrit - 1e-3 - ivn) * (i + 1) / 4.0;
      if (r <= ivn) continue;
      const double el = lower_exponent(ev, r);
      const ExponentValue eu = upper_exponent(ev, r);
      rep.max_violation = std::max(rep.max_violation, std::abs(el - eu.value));
    }
    // Linear regime above the critical rate.
    for (int i = 0; i < 3; ++i) {
      const double r = rcrit + (teleport - rcrit) * (i + 1) / 4.0;
      const double el = lower_exponent(ev, r);
      rep.max_violation = std::max(rep.max_violation, std::abs(el - 0.5 * (r - i2)));
    }
    // Divergence threshold of the upper bound.
    const ExponentValue just_below = upper_exponent(ev, std::max(0.0, imax - 0.01));
    const ExponentValue just_above = upper_exponent(ev, imax + 0.01);
    if (std::isinf(just_below.value)) rep.max_violation = std::max(rep.max_violation, 1.0);
    if (!std::isinf(just_above.value)) rep.max_violation = std::max(rep.max_violation, 1.0);
    // Zero at the mutual information.
    rep.max_violation = std::max(rep.max_violation, lower_exponent(ev, ivn));
    ++rep.instances;
  }
  return rep;
}

SuiteReport suite_smoothing(const SolverSettings& settings, int instances) {
  SuiteReport rep;
  rep.units = "normalized";
  rep.tolerance = 1.0;  // per-check violations divided by their tolerances
  const int n = instances > 0 ? instances : 3;
  for (int k = 0; k < n; ++k) {
    Rng rng(mix_seed(settings.seed, 0x0d3 + k));
    DensityOperator rho = DensityOperator::trusted(random_density_hs(4, rng), {2, 2});
    SolverSettings s = settings;
    s.seed = mix_seed(settings.seed, 0x0d300 + k);
    const double imax = max_information(rho, s);
    std::vector<double> grid = {0.25 * imax, 0.5 * imax, 0.75 * imax, imax + 1e-6, imax + 0.3};
    auto results = delta_grid(rho, grid, s);
    for (size_t i = 0; i + 1 < results.size(); ++i)
      rep.max_violation =
          std::max(rep.max_violation, (results[i + 1].delta - results[i].delta) / 1e-6);
    for (size_t i = 0; i < results.size(); ++i) {
      rep.max_violation = std::max(rep.max_violation, results[i].feasibility_residual / 1e-8);
      rep.max_violation = std::max(rep.max_violation, -results[i].oracle_gap / 1e-9);
      if (grid[i] >= imax + 1e-6)
        rep.max_violation = std::max(rep.max_violation, results[i].delta / 1e-6);
    }
    ++rep.instances;
  }
  return rep;
}

using SuiteFn = std::function<SuiteReport(const SolverSettings&, int)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"additivity", suite_additivity},
      {"alpha_monotone", suite_alpha_monotone},
      {"s_convexity", suite_s_convexity},
      {"input_concavity", suite_input_concavity},
      {"symmetric_minimizer", suite_symmetric_minimizer},
      {"symmetrization", suite_symmetrization},
      {"de_finetti", suite_de_finetti},
      {"exponent_consistency", suite_exponent_consistency},
      {"smoothing", suite_smoothing},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SolverSettings& settings, int instances) {
  settings.check();
  for (const auto& [key, fn] : suite_table()) {
    if (key != name) continue;
    SuiteReport rep = fn(settings, instances);
    rep.suite = name;
    rep.seed = settings.seed;
    rep.max_violation = std::max(0.0, rep.max_violation);
    rep.pass = rep.max_violation <= rep.tolerance;
    return rep;
  }
  throw std::invalid_argument("run_suite: unknown suite " + name);
}

std::vector<SuiteReport> run_all(const SolverSettings& settings) {
  std::vector<SuiteReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, settings));
  return out;
}

nlohmann::ordered_json coverage_manifest() {
  nlohmann::ordered_json j;
  j["tensor_additivity_of_channel_renyi_mi"] = "additivity";
  j["alpha_monotonicity_of_channel_renyi_mi"] = "alpha_monotone";
  j["convexity_and_monotonicity_of_s_times_i"] = "s_convexity";
  j["concavity_of_per_input_renyi_mi"] = "input_concavity";
  j["symmetric_inner_minimizer_on_symmetric_states"] = "symmetric_minimizer";
  j["symmetrization_does_not_hurt_channel_distance"] = "symmetrization";
  j["single_test_state_bound_on_symmetric_channel_distance"] = "de_finetti";
  j["reliability_bound_structure_and_critical_rate"] = "exponent_consistency";
  j["max_information_smoothing_properties"] = "smoothing";
  return j;
}

nlohmann::ordered_json report_to_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["instances"] = report.instances;
  j["tolerance"] = report.tolerance;
  j["max_violation"] = report.max_violation;
  j["units"] = report.units;
  j["pass"] = report.pass;
  return j;
}

nlohmann::ordered_json reports_to_json(const std::vector<SuiteReport>& reports,
                                       const SolverSettings& settings) {
  nlohmann::ordered_json j;
  j["seed"] = settings.seed;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    suites.push_back(report_to_json(r));
    all = all && r.pass;
  }
  j["suites"] = std::move(suites);
  j["coverage"] = coverage_manifest();
  j["all_pass"] = all;
  return j;
}

}  // namespace rss
