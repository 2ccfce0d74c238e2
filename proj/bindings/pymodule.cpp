// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rss/channels.hpp"
#include "rss/exponents.hpp"
#include "rss/io.hpp"
#include "rss/linalg.hpp"
#include "rss/mutinfo.hpp"
#include "rss/renyi.hpp"
#include "rss/smoothing.hpp"
#include "rss/verify.hpp"

namespace py = pybind11;
using namespace rss;

namespace {

SolverSettings settings_from_kwargs(double inner_tol, double outer_tol, int max_iter,
                                    int multistarts, std::uint64_t seed, double ladder_cap) {
  SolverSettings s;
  s.inner_tol = inner_tol;
  s.outer_tol = outer_tol;
  s.max_iter = max_iter;
  s.multistarts = multistarts;
  s.seed = seed;
  s.alpha_ladder_cap = ladder_cap;
  s.check();
  return s;
}

py::dict mi_result(const MutualInfoResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["minimizer_sigma"] = r.minimizer_sigma;
  d["maximizer_input"] = r.maximizer_input;
  d["converged"] = r.converged;
  d["restart_spread"] = r.restart_spread;
  return d;
}

py::dict smoothing_result(const SmoothingResult& r) {
  py::dict d;
  d["delta"] = r.delta;
  d["optimizer_state"] = r.optimizer_state;
  d["optimizer_sigma"] = r.optimizer_sigma;
  d["oracle_gap"] = r.oracle_gap;
  d["feasibility_residual"] = r.feasibility_residual;
  d["converged"] = r.converged;
  return d;
}

py::dict curve_point(const CurvePoint& p) {
  py::dict d;
  d["r"] = p.r;
  d["e_lower"] = p.e_lower;
  d["e_upper"] = p.e_upper;
  d["regime"] = regime_name(p.regime);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reverse Shannon simulation toolkit: sandwiched Renyi mutual information,"
            " reliability-function bounds, and max-information smoothing";

  py::class_<SolverSettings>(m, "SolverSettings")
      .def(py::init(&settings_from_kwargs), py::arg("inner_tol") = 1e-9,
           py::arg("outer_tol") = 1e-7, py::arg("max_iter") = 10000,
           py::arg("multistarts") = 8, py::arg("seed") = 1,
           py::arg("alpha_ladder_cap") = 1024.0)
      .def_readwrite("inner_tol", &SolverSettings::inner_tol)
      .def_readwrite("outer_tol", &SolverSettings::outer_tol)
      .def_readwrite("max_iter", &SolverSettings::max_iter)
      .def_readwrite("multistarts", &SolverSettings::multistarts)
      .def_readwrite("seed", &SolverSettings::seed)
      .def_readwrite("alpha_ladder_cap", &SolverSettings::alpha_ladder_cap);

  py::class_<Channel>(m, "Channel")
      .def(py::init([](int din, int dout, const std::vector<Matrix>& kraus,
                       const std::string& label) {
             return Channel::make(din, dout, kraus, label);
           }),
           py::arg("dim_in"), py::arg("dim_out"), py::arg("kraus"), py::arg("label") = "")
      .def_readonly("dim_in", &Channel::dim_in)
      .def_readonly("dim_out", &Channel::dim_out)
      .def_readonly("label", &Channel::label)
      .def_property_readonly("kraus", [](const Channel& ch) { return ch.kraus; })
      .def("__repr__", [](const Channel& ch) {
        std::ostringstream os;
        os << "<Channel " << (ch.label.empty() ? "?" : ch.label) << " " << ch.dim_in << "->"
           << ch.dim_out << ", " << ch.kraus.size() << " kraus>";
        return os.str();
      });

  m.def("canonical_channel", &canonical_channel, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{});
  m.def("load_channel", &load_channel_file, py::arg("path"));
  m.def("validate", [](const Channel& ch) {
    ChannelValidation v = validate(ch);
    py::dict d;
    d["tp_residual"] = v.tp_residual;
    d["min_choi_eig"] = v.min_choi_eig;
    d["ok"] = v.ok();
    return d;
  });
  m.def("apply", [](const Channel& ch, const Matrix& rho) { return apply(ch, rho); },
        py::arg("channel"), py::arg("rho"));
  m.def("output_state",
        [](const Channel& ch, const Matrix& rho_a) { return output_state(ch, rho_a).matrix(); },
        py::arg("channel"), py::arg("rho_a"),
        "joint output of id_R (x) channel on the purified input; dims (dim_in, dim_out)");
  m.def("choi", [](const Channel& ch) { return choi_state(ch).matrix(); });
  m.def("tensor", &tensor);
  m.def("symmetrize", &symmetrize, py::arg("channel"), py::arg("n"), py::arg("dA"),
        py::arg("dB"));
  m.def("channel_purified_distance",
        [](const Channel& a, const Channel& b, const SolverSettings& s) {
          ChannelDistanceResult r = channel_purified_distance(a, b, s);
          py::dict d;
          d["value"] = r.value;
          d["witness"] = r.witness;
          d["restart_spread"] = r.restart_spread;
          d["starts"] = r.starts;
          d["certified"] = r.certified;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("settings") = SolverSettings{});

  // scalar information quantities
  m.def("d_alpha", &d_alpha, py::arg("rho"), py::arg("sigma"), py::arg("alpha"));
  m.def("d_max", &d_max, py::arg("rho"), py::arg("sigma"));
  m.def("umegaki", &umegaki);
  m.def("von_neumann", &von_neumann);
  m.def("fidelity", [](const Matrix& a, const Matrix& b) { return fidelity(a, b); });
  m.def("purified_distance",
        [](const Matrix& a, const Matrix& b) { return purified_distance(a, b); });

  // linear-algebra utilities
  m.def("partial_trace",
        [](const Matrix& mat, const std::vector<int>& dims, const std::vector<int>& keep) {
          return partial_trace(mat, dims, keep);
        });
  m.def("purify", [](const Matrix& rho) { return purify(DensityOperator::make(rho)).amplitudes; });
  m.def("de_finetti_state", [](int n, int dA) { return de_finetti_state(n, dA).matrix(); });
  m.def("symmetric_subspace_dim", &symmetric_subspace_dim);
  m.def("distinct_eigenvalue_count", &distinct_eigenvalue_count, py::arg("h"),
        py::arg("rel_tol") = 1e-8);

  // mutual information
  m.def("state_mi_alpha",
        [](const Matrix& rho, const std::vector<int>& dims, double alpha,
           const SolverSettings& s) {
          return mi_result(state_mi_alpha(DensityOperator::make(rho, dims), alpha, s));
        },
        py::arg("rho"), py::arg("dims"), py::arg("alpha"),
        py::arg("settings") = SolverSettings{});
  m.def("state_mi_vn", [](const Matrix& rho, const std::vector<int>& dims) {
    return state_mi_vn(DensityOperator::make(rho, dims));
  });
  m.def("max_information",
        [](const Matrix& rho, const std::vector<int>& dims, const SolverSettings& s) {
          return max_information(DensityOperator::make(rho, dims), s);
        },
        py::arg("rho"), py::arg("dims"), py::arg("settings") = SolverSettings{});
  m.def("channel_mi_alpha",
        [](const Channel& ch, double alpha, const SolverSettings& s) {
          return mi_result(channel_mi_alpha(ch, alpha, s));
        },
        py::arg("channel"), py::arg("alpha"), py::arg("settings") = SolverSettings{});
  m.def("channel_mi_vn",
        [](const Channel& ch, const SolverSettings& s) { return mi_result(channel_mi_vn(ch, s)); },
        py::arg("channel"), py::arg("settings") = SolverSettings{});
  m.def("channel_mi_max",
        [](const Channel& ch, const SolverSettings& s) { return mi_result(channel_mi_max(ch, s)); },
        py::arg("channel"), py::arg("settings") = SolverSettings{});

  // reliability-function machinery
  m.def("reliability_summary",
        [](const Channel& ch, const SolverSettings& s) {
          MiEvaluator ev(ch, s);
          CriticalRate rc = critical_rate(ev);
          bool conv = false;
          py::dict d;
          d["i"] = ev.i_vn();
          d["i2"] = ev.i2();
          d["i_max"] = ev.i_max(&conv);
          d["i_max_converged"] = conv;
          d["r_critical"] = rc.value;
          d["r_critical_uncertainty"] = rc.uncertainty;
          d["teleport"] = ev.teleportation_rate();
          return d;
        },
        py::arg("channel"), py::arg("settings") = SolverSettings{});
  m.def("lower_exponent",
        [](const Channel& ch, double r, const SolverSettings& s) {
          MiEvaluator ev(ch, s);
          return lower_exponent(ev, r);
        },
        py::arg("channel"), py::arg("r"), py::arg("settings") = SolverSettings{});
  m.def("upper_exponent",
        [](const Channel& ch, double r, const SolverSettings& s) {
          MiEvaluator ev(ch, s);
          ExponentValue v = upper_exponent(ev, r);
          py::dict d;
          d["value"] = v.value;
          d["s_star"] = v.s_star;
          d["flagged"] = v.flagged;
          return d;
        },
        py::arg("channel"), py::arg("r"), py::arg("settings") = SolverSettings{});
  m.def("reliability_curve",
        [](const Channel& ch, double r_min, double r_max, int steps, bool quantum_rate,
           const SolverSettings& s) {
          MiEvaluator ev(ch, s);
          Curve c = make_curve(ev, r_min, r_max, steps, quantum_rate);
          py::list pts;
          for (const auto& p : c.points) pts.append(curve_point(p));
          py::dict d;
          d["channel"] = c.channel_label;
          d["i"] = c.annotations.i_vn;
          d["i2"] = c.annotations.i2;
          d["r_critical"] = c.annotations.r_critical;
          d["i_max"] = c.annotations.i_max;
          d["teleport"] = c.annotations.teleport;
          d["points"] = pts;
          return d;
        },
        py::arg("channel"), py::arg("r_min"), py::arg("r_max"), py::arg("steps"),
        py::arg("quantum_rate") = false, py::arg("settings") = SolverSettings{});
  m.def("finite_n_bound",
        [](const Channel& ch, long n, double r, std::optional<double> s_fixed,
           const SolverSettings& s) {
          MiEvaluator ev(ch, s);
          BoundReport b = finite_n_bound(ev, n, r, s_fixed);
          py::dict d;
          d["n"] = b.n;
          d["r"] = b.r;
          d["s_star"] = b.s_star;
          d["prefactor"] = b.prefactor;
          d["exponent_bits"] = b.exponent_bits;
          d["bound_value"] = b.bound_value;
          d["clipped"] = b.clipped;
          return d;
        },
        py::arg("channel"), py::arg("n"), py::arg("r"), py::arg("s") = std::nullopt,
        py::arg("settings") = SolverSettings{});
  m.def("one_shot_fixed_input_bound", &one_shot_fixed_input_bound, py::arg("channel"),
        py::arg("rho_a"), py::arg("sigma_b"), py::arg("c"), py::arg("s"));

  // smoothing
  m.def("delta_smooth",
        [](const Matrix& rho, const std::vector<int>& dims, double lambda,
           const SolverSettings& s) {
          return smoothing_result(delta_smooth(DensityOperator::make(rho, dims), lambda, s));
        },
        py::arg("rho"), py::arg("dims"), py::arg("lambda_bits"),
        py::arg("settings") = SolverSettings{});
  m.def("delta_exponent",
        [](const Matrix& rho, const std::vector<int>& dims, double r, const SolverSettings& s) {
          ExponentValue v = delta_exponent(DensityOperator::make(rho, dims), r, s);
          py::dict d;
          d["value"] = v.value;
          d["s_star"] = v.s_star;
          d["flagged"] = v.flagged;
          return d;
        },
        py::arg("rho"), py::arg("dims"), py::arg("r"), py::arg("settings") = SolverSettings{});
  m.def("converse_floor",
        [](const Channel& ch, const Matrix& rho_a, double c, const SolverSettings& s) {
          return smoothing_result(converse_floor(ch, rho_a, c, s));
        },
        py::arg("channel"), py::arg("rho_a"), py::arg("c"), py::arg("settings") = SolverSettings{});

  // verification suites
  m.def("suite_names", [] { return suite_names(); });
  m.def("run_suite",
        [](const std::string& name, const SolverSettings& s, int instances) {
          SuiteReport r = run_suite(name, s, instances);
          py::dict d;
          d["suite"] = r.suite;
          d["seed"] = r.seed;
          d["instances"] = r.instances;
          d["tolerance"] = r.tolerance;
          d["max_violation"] = r.max_violation;
          d["units"] = r.units;
          d["pass"] = r.pass;
          return d;
        },
        py::arg("name"), py::arg("settings") = SolverSettings{}, py::arg("instances") = 0);
}
