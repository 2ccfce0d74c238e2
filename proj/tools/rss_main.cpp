// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: channel inspection, mutual-information and
// reliability computations, finite-blocklength bounds, smoothing, and the
// property-suite runner. Every flag is mirrored by an RSS_* environment
// variable (the flag wins on conflict).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rss/channels.hpp"
#include "rss/exponents.hpp"
#include "rss/io.hpp"
#include "rss/mutinfo.hpp"
#include "rss/smoothing.hpp"
#include "rss/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNotConverged = 2;

std::string fmt(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, double> out;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw rss::ParseError("param", "param: expected key=value, got \"" + item + "\"");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw rss::ParseError("param", "param: value in \"" + item + "\" is not a number");
    }
  }
  return out;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw rss::ParseError("out", "out: cannot write " + out_path);
  os << text;
}

struct Cli {
  rss::RunConfig config;
  std::string config_path;
  std::string channel_token;
  std::vector<std::string> params;
  std::string name;
  std::string state_path;
  double alpha = 1.5;
  bool use_vn = false;
  bool use_max = false;
  double r_min = 0.0, r_max = 3.0;
  int steps = 16;
  bool quantum_rate = false;
  double rate = 1.0;
  long n_copies = 100;
  double s_value = -1.0;
  double lambda = 1.0;
  std::string suite = "all";
  int instances = 0;
};

rss::Channel resolve_valid_channel(const Cli& cli) {
  rss::Channel ch = rss::resolve_channel(cli.channel_token, parse_params(cli.params));
  rss::ChannelValidation v = rss::validate(ch);
  if (!v.ok())
    throw rss::ParseError("kraus", "kraus: channel fails validation (tp residual " +
                                       fmt(v.tp_residual, 3) + ", min choi eig " +
                                       fmt(v.min_choi_eig, 3) + ")");
  return ch;
}

int cmd_chan_show(const Cli& cli) {
  const std::string token = cli.name.empty() ? cli.channel_token : cli.name;
  rss::Channel ch = rss::resolve_channel(token, parse_params(cli.params));
  rss::ChannelValidation v = rss::validate(ch);
  const int p = cli.config.precision;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["channel"] = ch.label;
    j["dim_in"] = ch.dim_in;
    j["dim_out"] = ch.dim_out;
    j["kraus_count"] = ch.kraus.size();
    j["tp_residual"] = v.tp_residual;
    j["min_choi_eig"] = v.min_choi_eig;
    j["valid"] = v.ok();
    write_output(cli.config.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "channel: " << ch.label << "\n";
    os << "dim_in: " << ch.dim_in << ", dim_out: " << ch.dim_out << "\n";
    os << "kraus count: " << ch.kraus.size() << "\n";
    os << "tp residual: " << fmt(v.tp_residual, p) << " (tolerance 1e-10)\n";
    os << "min choi eigenvalue: " << fmt(v.min_choi_eig, p) << " (tolerance -1e-10)\n";
    os << "valid: " << (v.ok() ? "yes" : "NO") << "\n";
    write_output(cli.config.out, os.str());
  }
  if (!v.ok()) {
    std::cerr << "error: kraus: channel fails validation\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_mi(const Cli& cli) {
  rss::Channel ch = resolve_valid_channel(cli);
  rss::MutualInfoResult res;
  std::string kind;
  if (cli.use_vn) {
    res = rss::channel_mi_vn(ch, cli.config.solver);
    kind = "I";
  } else if (cli.use_max) {
    res = rss::channel_mi_max(ch, cli.config.solver);
    kind = "I_max";
  } else {
    res = rss::channel_mi_alpha(ch, cli.alpha, cli.config.solver);
    kind = "I_alpha";
  }
  const int p = cli.config.precision;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["channel"] = ch.label;
    j["kind"] = kind;
    if (kind == "I_alpha") j["alpha"] = cli.alpha;
    j["value_bits"] = res.value;
    j["converged"] = res.converged;
    j["restart_spread_bits"] = res.restart_spread;
    write_output(cli.config.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "channel: " << ch.label << "\n";
    if (kind == "I_alpha") os << "alpha: " << fmt(cli.alpha, p) << "\n";
    os << kind << " = " << fmt(res.value, p) << " bits\n";
    os << "converged: " << (res.converged ? "yes" : "NO") << " (restart spread "
       << fmt(res.restart_spread, p) << " bits)\n";
    write_output(cli.config.out, os.str());
  }
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_critical(const Cli& cli) {
  rss::Channel ch = resolve_valid_channel(cli);
  rss::MiEvaluator ev(ch, cli.config.solver);
  rss::CriticalRate rc = rss::critical_rate(ev);
  bool imax_conv = false;
  const double imax = ev.i_max(&imax_conv);
  const int p = cli.config.precision;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["channel"] = ch.label;
    j["r_critical_bits"] = rc.value;
    j["uncertainty_bits"] = rc.uncertainty;
    j["flagged"] = rc.flagged;
    j["i_bits"] = ev.i_vn();
    j["i2_bits"] = ev.i2();
    j["i_max_bits"] = imax;
    j["i_max_converged"] = imax_conv;
    write_output(cli.config.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "channel: " << ch.label << "\n";
    os << "R_critical = " << fmt(rc.value, p) << " +- " << fmt(rc.uncertainty, p)
       << " bits/use" << (rc.flagged ? " (flagged: uncertainty above target)" : "") << "\n";
    os << "I(N) = " << fmt(ev.i_vn(), p) << " bits/use\n";
    os << "I_2 = " << fmt(ev.i2(), p) << " bits/use\n";
    os << "I_max = " << fmt(imax, p) << " bits/use ("
       << (imax_conv ? "ladder converged" : "ladder estimate, NOT converged") << ")\n";
    write_output(cli.config.out, os.str());
  }
  const bool ok = !rc.flagged && ev.all_converged();
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_curve(const Cli& cli) {
  rss::Channel ch = resolve_valid_channel(cli);
  rss::MiEvaluator ev(ch, cli.config.solver);
  rss::Curve curve = rss::make_curve(ev, cli.r_min, cli.r_max, cli.steps, cli.quantum_rate);
  std::ostringstream os;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["channel"] = curve.channel_label;
    j["I"] = curve.annotations.i_vn;
    j["I2"] = curve.annotations.i2;
    j["Rcrit"] = curve.annotations.r_critical;
    j["Imax"] = curve.annotations.i_max;
    j["teleport"] = curve.annotations.teleport;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& pt : curve.points) {
      nlohmann::ordered_json pj;
      pj["r"] = pt.r;
      pj["e_lower"] = std::isinf(pt.e_lower) ? 1e308 * 10 : pt.e_lower;  // inf
      pj["e_upper"] = std::isinf(pt.e_upper) ? 1e308 * 10 : pt.e_upper;
      pj["regime"] = rss::regime_name(pt.regime);
      pts.push_back(pj);
    }
    j["points"] = pts;
    os << j.dump(2) << "\n";
  } else {
    rss::write_curve_csv(os, curve, cli.config.precision);
  }
  write_output(cli.config.out, os.str());
  return ev.all_converged() ? kExitOk : kExitNotConverged;
}

int cmd_finite_n(const Cli& cli) {
  rss::Channel ch = resolve_valid_channel(cli);
  rss::MiEvaluator ev(ch, cli.config.solver);
  std::optional<double> s;
  if (cli.s_value > 0) s = cli.s_value;
  rss::BoundReport rep = rss::finite_n_bound(ev, cli.n_copies, cli.rate, s);
  const int p = cli.config.precision;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["channel"] = ch.label;
    j["n"] = rep.n;
    j["r"] = rep.r;
    j["s_star"] = rep.s_star;
    j["prefactor"] = rep.prefactor;
    j["exponent_bits"] = rep.exponent_bits;
    j["bound_value"] = rep.bound_value;
    j["clipped"] = rep.clipped;
    write_output(cli.config.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "channel: " << ch.label << "\n";
    os << "n: " << rep.n << ", rate: " << fmt(rep.r, p) << " bits/use\n";
    os << "s*: " << fmt(rep.s_star, p) << "\n";
    os << "prefactor f(n,s*): " << fmt(rep.prefactor, p) << "\n";
    os << "exponent: " << fmt(rep.exponent_bits, p) << " bits\n";
    os << "bound on purified distance: " << fmt(rep.bound_value, p)
       << (rep.clipped ? " (clipped at 1)" : "") << "\n";
    write_output(cli.config.out, os.str());
  }
  return ev.all_converged() ? kExitOk : kExitNotConverged;
}

int cmd_delta(const Cli& cli) {
  if (cli.state_path.empty()) throw rss::ParseError("state", "state: missing --state file");
  rss::DensityOperator rho = rss::load_state_file(cli.state_path);
  if (rho.dims().size() != 2)
    throw rss::ParseError("dims", "dims: delta requires a bipartite (R,B) split");
  rss::SmoothingResult res = rss::delta_smooth(rho, cli.lambda, cli.config.solver);
  const int p = cli.config.precision;
  if (cli.config.format == "json") {
    nlohmann::ordered_json j;
    j["state"] = cli.state_path;
    j["lambda_bits"] = cli.lambda;
    j["delta"] = res.delta;
    j["feasibility_residual"] = res.feasibility_residual;
    j["oracle_gap"] = res.oracle_gap;
    j["converged"] = res.converged;
    write_output(cli.config.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "state: " << cli.state_path << "\n";
    os << "lambda: " << fmt(cli.lambda, p) << " bits\n";
    os << "delta = " << fmt(res.delta, p) << " (purified distance)\n";
    os << "feasibility residual: " << fmt(res.feasibility_residual, p) << "\n";
    os << "oracle gap: " << fmt(res.oracle_gap, p) << "\n";
    os << "converged: " << (res.converged ? "yes" : "NO") << "\n";
    write_output(cli.config.out, os.str());
  }
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const Cli& cli) {
  std::vector<rss::SuiteReport> reports;
  if (cli.suite == "all") {
    for (const auto& name : rss::suite_names())
      reports.push_back(rss::run_suite(name, cli.config.solver, cli.instances));
  } else {
    reports.push_back(rss::run_suite(cli.suite, cli.config.solver, cli.instances));
  }
  nlohmann::ordered_json j = rss::reports_to_json(reports, cli.config.solver);
  write_output(cli.config.out, j.dump(2) + "\n");
  if (!cli.config.out.empty()) {
    for (const auto& r : reports)
      std::cerr << (r.pass ? "[pass] " : "[FAIL] ") << r.suite << " max violation "
                << fmt(r.max_violation, 6) << " (tolerance " << fmt(r.tolerance, 6) << " "
                << r.units << ")\n";
  }
  const bool all = std::all_of(reports.begin(), reports.end(),
                               [](const rss::SuiteReport& r) { return r.pass; });
  return all ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse Shannon simulation toolkit: channel Renyi mutual information,"
               " reliability-function bounds, finite-blocklength bounds, and"
               " max-information smoothing"};
  app.require_subcommand(1);
  Cli cli;

  // Global options, each mirrored by an RSS_* environment variable.
  app.add_option("--seed", cli.config.solver.seed, "RNG seed")->envname("RSS_SEED");
  app.add_option("--inner-tol", cli.config.solver.inner_tol, "inner solver tolerance, bits")
      ->envname("RSS_INNER_TOL");
  app.add_option("--outer-tol", cli.config.solver.outer_tol, "outer solver tolerance, bits")
      ->envname("RSS_OUTER_TOL");
  app.add_option("--max-iter", cli.config.solver.max_iter, "iteration cap per local search")
      ->envname("RSS_MAX_ITER");
  app.add_option("--multistarts", cli.config.solver.multistarts, "restart count")
      ->envname("RSS_MULTISTARTS");
  app.add_option("--alpha-ladder-cap", cli.config.solver.alpha_ladder_cap,
                 "largest alpha on the I_max ladder")
      ->envname("RSS_ALPHA_LADDER_CAP");
  app.add_option("--out", cli.config.out, "output file (default: stdout)")->envname("RSS_OUT");
  app.add_option("--format", cli.config.format, "output format: csv or json")
      ->envname("RSS_FORMAT");
  app.add_option("--precision", cli.config.precision, "printed significant digits")
      ->envname("RSS_PRECISION");
  app.add_option("--config", cli.config_path, "JSON config file (flags win on conflict)")
      ->envname("RSS_CONFIG");

  auto* chan = app.add_subcommand("chan", "channel utilities");
  auto* chan_show = chan->add_subcommand("show", "print dims, Kraus count, validation residuals");
  chan_show->add_option("--name", cli.name, "canonical channel name")->envname("RSS_NAME");
  chan_show->add_option("--channel", cli.channel_token, "channel file or canonical name")
      ->envname("RSS_CHANNEL");
  chan_show->add_option("--param", cli.params, "channel parameter key=value (repeatable)")
      ->envname("RSS_PARAM");

  auto* mi = app.add_subcommand("mi", "channel Renyi mutual information");
  mi->add_option("--channel", cli.channel_token, "channel file or canonical name")
      ->required()
      ->envname("RSS_CHANNEL");
  mi->add_option("--param", cli.params, "channel parameter key=value (repeatable)")
      ->envname("RSS_PARAM");
  mi->add_option("--alpha", cli.alpha, "Renyi order (> 1)")->envname("RSS_ALPHA");
  mi->add_flag("--vn", cli.use_vn, "von Neumann mutual information I(N)");
  mi->add_flag("--max", cli.use_max, "ladder estimate of I_max(N)");

  auto* critical = app.add_subcommand("critical", "critical rate and anchors");
  critical->add_option("--channel", cli.channel_token, "channel file or canonical name")
      ->required()
      ->envname("RSS_CHANNEL");
  critical->add_option("--param", cli.params, "channel parameter key=value (repeatable)")
      ->envname("RSS_PARAM");

  auto* curve = app.add_subcommand("curve", "reliability-function bounds over a rate range");
  curve->add_option("--channel", cli.channel_token, "channel file or canonical name")
      ->required()
      ->envname("RSS_CHANNEL");
  curve->add_option("--param", cli.params, "channel parameter key=value (repeatable)")
      ->envname("RSS_PARAM");
  curve->add_option("--r-min", cli.r_min, "lowest rate, bits/use")->envname("RSS_R_MIN");
  curve->add_option("--r-max", cli.r_max, "highest rate, bits/use")->envname("RSS_R_MAX");
  curve->add_option("--steps", cli.steps, "number of samples")->envname("RSS_STEPS");
  curve->add_flag("--quantum", cli.quantum_rate,
                  "rates are qubits/use (doubled to classical bits)");

  auto* finite = app.add_subcommand("finite-n", "achievability bound for n uses");
  finite->add_option("--channel", cli.channel_token, "channel file or canonical name")
      ->required()
      ->envname("RSS_CHANNEL");
  finite->add_option("--param", cli.params, "channel parameter key=value (repeatable)")
      ->envname("RSS_PARAM");
  finite->add_option("--rate", cli.rate, "rate, bits/use")->required()->envname("RSS_RATE");
  finite->add_option("--n", cli.n_copies, "blocklength")->required()->envname("RSS_N");
  finite->add_option("--s", cli.s_value, "fixed s in (0,1] (default: optimized)")
      ->envname("RSS_S");

  auto* delta = app.add_subcommand("delta", "max-information smoothing quantity");
  delta->add_option("--state", cli.state_path, "bipartite state file")
      ->required()
      ->envname("RSS_STATE");
  delta->add_option("--lambda", cli.lambda, "dominance exponent, bits")
      ->required()
      ->envname("RSS_LAMBDA");

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", cli.suite, "suite name or 'all'")->envname("RSS_SUITE");
  verify->add_option("--instances", cli.instances, "override instance count (0 = default)")
      ->envname("RSS_INSTANCES");

  try {
    app.parse(argc, argv);
    if (!cli.config_path.empty()) {
      rss::RunConfig from_file;
      rss::apply_config_file(from_file, cli.config_path);
      // Flags win on conflict.
      if (!app.count("--seed")) cli.config.solver.seed = from_file.solver.seed;
      if (!app.count("--inner-tol")) cli.config.solver.inner_tol = from_file.solver.inner_tol;
      if (!app.count("--outer-tol")) cli.config.solver.outer_tol = from_file.solver.outer_tol;
      if (!app.count("--max-iter")) cli.config.solver.max_iter = from_file.solver.max_iter;
      if (!app.count("--multistarts"))
        cli.config.solver.multistarts = from_file.solver.multistarts;
      if (!app.count("--alpha-ladder-cap"))
        cli.config.solver.alpha_ladder_cap = from_file.solver.alpha_ladder_cap;
      if (!app.count("--out") && !from_file.out.empty()) cli.config.out = from_file.out;
      if (!app.count("--format")) cli.config.format = from_file.format;
      if (!app.count("--precision")) cli.config.precision = from_file.precision;
    }
    if (cli.config.format != "csv" && cli.config.format != "json")
      throw rss::ParseError("format", "format: must be csv or json");
    cli.config.solver.check();

    if (app.got_subcommand(chan)) {
      if (!chan->got_subcommand(chan_show))
        throw rss::ParseError("chan", "chan: expected subcommand 'show'");
      if (cli.name.empty() && cli.channel_token.empty())
        throw rss::ParseError("name", "name: provide --name or --channel");
      return cmd_chan_show(cli);
    }
    if (app.got_subcommand(mi)) return cmd_mi(cli);
    if (app.got_subcommand(critical)) return cmd_critical(cli);
    if (app.got_subcommand(curve)) return cmd_curve(cli);
    if (app.got_subcommand(finite)) return cmd_finite_n(cli);
    if (app.got_subcommand(delta)) return cmd_delta(cli);
    if (app.got_subcommand(verify)) return cmd_verify(cli);
    throw rss::ParseError("command", "command: no subcommand given");
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const rss::ParseError& e) {
    std::cerr << "error: " << e.what() << " [field: " << e.field() << "]\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
