// SPDX-License-Identifier: Apache-2.0
#include "rss/mutinfo.hpp"

#include <cmath>
#include <limits>

#include "rss/mutinfo_inner.hpp"
#include "rss/optim.hpp"
#include "rss/renyi.hpp"

namespace rss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_bipartite(const DensityOperator& rho) {
  if (rho.dims().size() != 2)
    throw std::invalid_argument("mutinfo: state must carry a registered (R,B) split");
}

}  // namespace

MutualInfoResult state_mi_alpha(const DensityOperator& rho_rb, double alpha,
                                const SolverSettings& settings) {
  require_bipartite(rho_rb);
  settings.check();
  if (alpha <= 1.0)
    throw std::invalid_argument("state_mi_alpha: alpha must be > 1 (use state_mi_vn at alpha = 1)");
  inner::Problem prob(rho_rb.matrix(), rho_rb.dims()[0], rho_rb.dims()[1], alpha);
  double spread = 0.0;
  inner::Result r = inner::solve_reference(prob, settings, &spread);
  MutualInfoResult out;
  out.value = std::max(0.0, r.value);
  out.minimizer_sigma = r.sigma;
  out.restart_spread = spread;
  out.converged = r.converged && spread <= settings.outer_tol;
  return out;
}

double state_mi_vn(const DensityOperator& rho_rb) {
  require_bipartite(rho_rb);
  const auto& dims = rho_rb.dims();
  Matrix rho_r = partial_trace(rho_rb.matrix(), dims, {0});
  Matrix rho_b = partial_trace(rho_rb.matrix(), dims, {1});
  return von_neumann(rho_r) + von_neumann(rho_b) - von_neumann(rho_rb.matrix());
}

double max_information(const DensityOperator& rho_rb, const SolverSettings& settings) {
  require_bipartite(rho_rb);
  settings.check();
  const int dr = rho_rb.dims()[0], db = rho_rb.dims()[1];
  Matrix rho_r = partial_trace(rho_rb.matrix(), rho_rb.dims(), {0});
  Matrix rho_b = partial_trace(rho_rb.matrix(), rho_rb.dims(), {1});

  auto objective = [&](const Eigen::VectorXd& th) {
    Matrix sigma = inner::density_from_params(th, db);
    return d_max(rho_rb.matrix(), kron(rho_r, sigma));
  };
  NelderMeadOptions opt;
  opt.max_evals = std::min(settings.max_iter, 4000);
  opt.ftol = 1e-12;
  opt.step = 0.3;
  opt.restarts = 3;

  double best = kInf;
  for (int k = 0; k < std::max(2, settings.multistarts / 2); ++k) {
    Eigen::VectorXd th;
    if (k == 0)
      th = inner::chol_params(rho_b);
    else if (k == 1)
      th = inner::chol_params(Matrix::Identity(db, db) / static_cast<double>(db));
    else {
      Rng rng(mix_seed(settings.seed, 0xd17a + k));
      th = inner::chol_params(random_density_hs(db, rng));
    }
    OptResult r = nelder_mead_min(objective, th, opt);
    best = std::min(best, r.value);
  }
  return std::max(0.0, best);
}

// ---------------------------------------------------------------------------
// Channel quantities through the Choi form. For the input rho_A with
// purification phi_RA, the joint output equals (A^(1/2) ⊗ I) J (A^(1/2) ⊗ I)
// up to an isometry on R, where A = rho_A^T and J is the unnormalized Choi
// matrix; its R-marginal is A.
// ---------------------------------------------------------------------------

namespace {

Matrix lifted_output(const Matrix& j_unnorm, const Matrix& a, int da, int db) {
  Matrix a_half = matrix_power(a, 0.5);
  Matrix lift = kron(a_half, Matrix::Identity(db, db));
  return hermitize(lift * j_unnorm * lift);
}

struct OuterEval {
  double value = 0.0;
  Matrix input;  // transposed coordinates (A)
  Matrix sigma;
  bool converged = false;
};

}  // namespace

// One full outer maximization. warm, if given, is appended to the start list.
// n_starts <= 0 means settings.multistarts. warm_out receives the winning A.
// anchor re-solves the winner with the reference inner path; the accelerated
// machinery (MiEvaluator) skips it since the two paths agree within inner_tol.
MutualInfoResult channel_mi_core(const Channel& ch, double alpha,
                                 const SolverSettings& settings, const Matrix* warm,
                                 int n_starts, Matrix* warm_out, bool anchor = true) {
  settings.check();
  if (alpha <= 1.0) throw std::invalid_argument("channel_mi_alpha: alpha must be > 1");
  const int da = ch.dim_in, db = ch.dim_out;
  const Matrix j = choi_unnormalized(ch);

  if (n_starts <= 0) n_starts = settings.multistarts;
  const bool with_warm = warm && warm->rows() == da;
  const int total_starts = n_starts + (with_warm ? 1 : 0);

  Matrix warm_sigma;  // chained across outer evaluations within one restart
  auto envelope = [&](const Eigen::VectorXd& th) {
    Matrix a = inner::density_from_params(th, da);
    inner::Problem prob(lifted_output(j, a, da, db), da, db, alpha);
    inner::Result r =
        inner::solve_fast(prob, settings, warm_sigma.rows() == db ? &warm_sigma : nullptr);
    if (!r.converged) {
      inner::Result ref = inner::solve_reference(prob, settings);
      if (ref.value < r.value) r = ref;
    }
    warm_sigma = r.sigma;
    return -r.value;
  };

  NelderMeadOptions opt;
  opt.max_evals = std::min(settings.max_iter, 32 * da * da + 120);
  opt.ftol = std::min(1e-10, 0.05 * settings.outer_tol);
  opt.xtol = 1e-8;
  opt.step = 0.35;
  opt.restarts = 1;

  OuterEval best;
  best.value = -kInf;
  double worst = kInf;
  bool all_ok = true;
  for (int k = 0; k < total_starts; ++k) {
    Eigen::VectorXd th;
    if (with_warm && k == 0)
      th = inner::chol_params(*warm);
    else if (k == (with_warm ? 1 : 0))
      th = inner::chol_params(Matrix::Identity(da, da) / static_cast<double>(da));
    else {
      Rng rng(settings.seed ^ static_cast<std::uint64_t>(k));
      th = inner::chol_params(random_density_hs(da, rng));
    }
    warm_sigma = Matrix();
    OptResult r = nelder_mead_min(envelope, th, opt);
    const double val = std::max(0.0, -r.value);
    all_ok = all_ok && r.converged;
    worst = std::min(worst, val);
    if (val > best.value) {
      best.value = val;
      best.input = inner::density_from_params(r.x, da);
    }
  }

  // Anchor the winner with the reference inner path; the accelerated and
  // reference values must agree within inner_tol.
  inner::Problem prob(lifted_output(j, best.input, da, db), da, db, alpha);
  inner::Result ref;
  if (anchor) {
    ref = inner::solve_reference(prob, settings);
    all_ok = all_ok && ref.converged && std::abs(ref.value - best.value) <= settings.inner_tol;
  } else {
    ref = inner::solve_fast(prob, settings, nullptr);
    all_ok = all_ok && ref.converged;
  }
  const double anchored = std::max(0.0, std::min(ref.value, best.value));

  if (warm_out) *warm_out = best.input;
  MutualInfoResult out;
  out.value = anchored;
  out.minimizer_sigma = ref.sigma;
  out.maximizer_input = best.input.transpose().eval();  // back to rho_A
  out.restart_spread = std::max(0.0, best.value - worst);
  out.converged = all_ok && out.restart_spread <= settings.outer_tol;
  return out;
}

MutualInfoResult channel_mi_alpha(const Channel& ch, double alpha,
                                  const SolverSettings& settings) {
  return channel_mi_core(ch, alpha, settings, nullptr, -1, nullptr);
}

MutualInfoResult channel_mi_alpha_fixed_input(const Channel& ch, const Matrix& rho_A,
                                              double alpha, const SolverSettings& settings) {
  settings.check();
  const int da = ch.dim_in, db = ch.dim_out;
  Matrix a = rho_A.transpose();
  inner::Problem prob(lifted_output(choi_unnormalized(ch), a, da, db), da, db, alpha);
  double spread = 0.0;
  inner::Result r = inner::solve_reference(prob, settings, &spread);
  MutualInfoResult out;
  out.value = std::max(0.0, r.value);
  out.minimizer_sigma = r.sigma;
  out.maximizer_input = rho_A;
  out.restart_spread = spread;
  out.converged = r.converged && spread <= settings.outer_tol;
  return out;
}

MutualInfoResult channel_mi_vn(const Channel& ch, const SolverSettings& settings) {
  settings.check();
  const int da = ch.dim_in, db = ch.dim_out;
  const Matrix j = choi_unnormalized(ch);

  auto objective = [&](const Eigen::VectorXd& th) {
    Matrix a = inner::density_from_params(th, da);
    Matrix joint = lifted_output(j, a, da, db);
    Matrix out_b = partial_trace(joint, {da, db}, {1});
    return -(von_neumann(a) + von_neumann(out_b) - von_neumann(joint));
  };
  NelderMeadOptions opt;
  opt.max_evals = std::min(settings.max_iter, 4000);
  opt.ftol = std::min(1e-12, 0.05 * settings.outer_tol);
  opt.step = 0.35;
  opt.restarts = 2;

  MutualInfoResult out;
  double best = -kInf, worst = kInf;
  bool all_ok = true;
  for (int k = 0; k < settings.multistarts; ++k) {
    Eigen::VectorXd th;
    if (k == 0)
      th = inner::chol_params(Matrix::Identity(da, da) / static_cast<double>(da));
    else {
      Rng rng(settings.seed ^ static_cast<std::uint64_t>(k));
      th = inner::chol_params(random_density_hs(da, rng));
    }
    OptResult r = nelder_mead_min(objective, th, opt);
    const double val = -r.value;
    all_ok = all_ok && r.converged;
    worst = std::min(worst, val);
    if (val > best) {
      best = val;
      out.maximizer_input = inner::density_from_params(r.x, da).transpose().eval();
    }
  }
  out.value = std::max(0.0, best);
  out.restart_spread = best - worst;
  out.converged = all_ok && out.restart_spread <= settings.outer_tol;
  return out;
}

MutualInfoResult channel_mi_max(const Channel& ch, const SolverSettings& settings) {
  settings.check();
  MutualInfoResult out;
  Matrix warm;
  double prev = -kInf;
  bool first = true;
  bool monotone = true;
  for (double alpha = 2.0; alpha <= settings.alpha_ladder_cap + 0.5; alpha *= 2.0) {
    MutualInfoResult step = channel_mi_core(ch, alpha, settings, first ? nullptr : &warm,
                                            first ? -1 : std::max(2, settings.multistarts / 4),
                                            &warm);
    if (!first && step.value < prev - 1e-8) monotone = false;
    out = step;
    if (!first && std::abs(step.value - prev) < 1e-4) {
      out.converged = monotone && step.converged;
      return out;
    }
    prev = step.value;
    first = false;
  }
  out.converged = false;  // ladder cap reached: flagged estimate
  return out;
}

// ---------------------------------------------------------------------------
// MiEvaluator
// ---------------------------------------------------------------------------

MiEvaluator::MiEvaluator(Channel ch, SolverSettings settings)
    : ch_(std::move(ch)), settings_(settings) {
  settings_.check();
}

double MiEvaluator::i_alpha(double alpha) {
  auto it = memo_.find(alpha);
  if (it != memo_.end()) return it->second;
  const bool first = warm_input_.rows() == 0;
  // Full multistart budget on the first query; later queries chain the warm
  // maximizer plus one fresh start. The evaluator runs on the accelerated
  // inner path (cross-checked against the reference by the anchored entry
  // points and the test suites).
  MutualInfoResult r = channel_mi_core(ch_, alpha, settings_, first ? nullptr : &warm_input_,
                                       first ? -1 : 1, &warm_input_, first);
  all_converged_ = all_converged_ && r.converged;
  memo_[alpha] = r.value;
  return r.value;
}

double MiEvaluator::i_vn() {
  if (!vn_) {
    MutualInfoResult r = channel_mi_vn(ch_, settings_);
    all_converged_ = all_converged_ && r.converged;
    vn_ = r.value;
  }
  return *vn_;
}

double MiEvaluator::i_max(bool* converged) {
  if (!imax_) {
    double prev = i_alpha(2.0);
    imax_converged_ = false;
    for (double alpha = 4.0; alpha <= settings_.alpha_ladder_cap + 0.5; alpha *= 2.0) {
      const double v = i_alpha(alpha);
      if (std::abs(v - prev) < 1e-4) {
        imax_converged_ = true;
        prev = v;
        break;
      }
      prev = v;
    }
    imax_ = prev;
  }
  if (converged) *converged = imax_converged_;
  return *imax_;
}

double MiEvaluator::teleportation_rate() const {
  return 2.0 * std::log2(static_cast<double>(std::min(ch_.dim_in, ch_.dim_out)));
}

}  // namespace rss
