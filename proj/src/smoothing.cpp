// SPDX-License-Identifier: Apache-2.0
#include "rss/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rss/mutinfo.hpp"
#include "rss/mutinfo_inner.hpp"
#include "rss/optim.hpp"
#include "rss/renyi.hpp"

namespace rss {

namespace {

constexpr int kOracleSamples = 1500;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct SigmaCache {
  Matrix sigma;
  Matrix omega;
  Matrix omega_half;
  Matrix omega_ihalf;  // pseudo-inverse square root
};

struct DeltaContext {
  Matrix rho;
  int dr = 0, db = 0, d = 0;
  double lambda = 0.0, pow2l = 1.0;
  Matrix rho_r, rho_b;
  EighResult rho_r_eig;
  Matrix sqrt_rho;

  DeltaContext(const DensityOperator& state, double l) {
    if (state.dims().size() != 2)
      throw std::invalid_argument("delta_smooth: state must carry a registered (R,B) split");
    if (l < 0) throw std::invalid_argument("delta_smooth: lambda must be >= 0");
    dr = state.dims()[0];
    db = state.dims()[1];
    d = dr * db;
    if (d > 16) throw std::invalid_argument("delta_smooth: total dimension exceeds 16");
    rho = hermitize(state.matrix());
    lambda = l;
    pow2l = std::exp2(l);
    rho_r = partial_trace(rho, state.dims(), {0});
    rho_b = partial_trace(rho, state.dims(), {1});
    rho_r_eig = eigh(rho_r);
    EighResult re = eigh(rho);
    RealVector sq = re.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    sqrt_rho = re.eigenvectors * sq.asDiagonal() * re.eigenvectors.adjoint();
  }

  SigmaCache cache(const Matrix& sigma) const {
    SigmaCache c;
    c.sigma = hermitize(sigma);
    c.omega = kron(rho_r, c.sigma);
    EighResult se = eigh(c.sigma);
    // omega's spectrum is the product spectrum; assemble both roots directly.
    const double rthresh = kPowerClip * std::max(1.0, rho_r_eig.eigenvalues.maxCoeff());
    const double sthresh = kPowerClip * std::max(1.0, se.eigenvalues.maxCoeff());
    RealVector rhalf(dr), rihalf(dr), shalf(db), sihalf(db);
    for (int i = 0; i < dr; ++i) {
      const double v = rho_r_eig.eigenvalues[i];
      rhalf[i] = v > rthresh ? std::sqrt(v) : 0.0;
      rihalf[i] = v > rthresh ? 1.0 / std::sqrt(v) : 0.0;
    }
    for (int j = 0; j < db; ++j) {
      const double v = se.eigenvalues[j];
      shalf[j] = v > sthresh ? std::sqrt(v) : 0.0;
      sihalf[j] = v > sthresh ? 1.0 / std::sqrt(v) : 0.0;
    }
    Matrix rh = rho_r_eig.eigenvectors * rhalf.asDiagonal() * rho_r_eig.eigenvectors.adjoint();
    Matrix rih = rho_r_eig.eigenvectors * rihalf.asDiagonal() * rho_r_eig.eigenvectors.adjoint();
    Matrix sh = se.eigenvectors * shalf.asDiagonal() * se.eigenvectors.adjoint();
    Matrix sih = se.eigenvectors * sihalf.asDiagonal() * se.eigenvectors.adjoint();
    c.omega_half = kron(rh, sh);
    c.omega_ihalf = kron(rih, sih);
    return c;
  }

  // rho_tilde from the Hermitian parameter matrix: eigenvalues of X squashed
  // into (0, 2^lambda) and shifted so tr(omega X) = 1 exactly.
  Matrix rho_tilde(const SigmaCache& sc, const Matrix& h) const {
    EighResult he = eigh(h);
    RealVector m(d);
    Matrix basis = he.eigenvectors.adjoint() * sc.omega * he.eigenvectors;
    for (int i = 0; i < d; ++i) m[i] = std::max(0.0, std::real(basis(i, i)));
    auto trace_at = [&](double c) {
      double t = 0.0;
      for (int i = 0; i < d; ++i) t += pow2l * sigmoid(he.eigenvalues[i] + c) * m[i];
      return t - 1.0;
    };
    const double c = solve_monotone(trace_at, -60.0, 60.0, 1e-14);
    RealVector x(d);
    for (int i = 0; i < d; ++i) x[i] = pow2l * sigmoid(he.eigenvalues[i] + c);
    Matrix xm = he.eigenvectors * x.asDiagonal() * he.eigenvectors.adjoint();
    return hermitize(sc.omega_half * xm * sc.omega_half);
  }

  double objective(const SigmaCache& sc, const Matrix& h) const {
    return distance(rho_tilde(sc, h));
  }

  double distance(const Matrix& rt) const {
    Matrix t = sqrt_rho * rt * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> ev(t, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < ev.eigenvalues().size(); ++i)
      f += std::sqrt(std::max(0.0, ev.eigenvalues()[i]));
    f = std::clamp(f, 0.0, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - f * f));
  }

  double residual(const SigmaCache& sc, const Matrix& rt) const {
    Matrix y = sc.omega_ihalf * rt * sc.omega_ihalf;
    Eigen::SelfAdjointEigenSolver<Matrix> ev(hermitize(y), Eigen::EigenvaluesOnly);
    return std::max(0.0, ev.eigenvalues().maxCoeff() - pow2l);
  }

  // Hermitian parameters approximating a target X in the squash coordinates.
  Matrix h_from_target(const SigmaCache& sc, const Matrix& target) const {
    Matrix y = hermitize(sc.omega_ihalf * target * sc.omega_ihalf);
    EighResult ye = eigh(y);
    RealVector hv(d);
    for (int i = 0; i < d; ++i) {
      const double frac = std::clamp(ye.eigenvalues[i] / pow2l, 1e-4, 1.0 - 1e-4);
      hv[i] = logit(frac);
    }
    return ye.eigenvectors * hv.asDiagonal() * ye.eigenvectors.adjoint();
  }
};

Eigen::VectorXd herm_params(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::VectorXd th(d * d);
  int pos = 0;
  for (int i = 0; i < d; ++i) th[pos++] = std::real(h(i, i));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      th[pos++] = std::real(h(i, j));
      th[pos++] = std::imag(h(i, j));
    }
  return th;
}

Matrix herm_from_params(const Eigen::VectorXd& th, int d) {
  Matrix h = Matrix::Zero(d, d);
  int pos = 0;
  for (int i = 0; i < d; ++i) h(i, i) = th[pos++];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      h(i, j) = cxd(th[pos], th[pos + 1]);
      h(j, i) = std::conj(h(i, j));
      pos += 2;
    }
  return h;
}

struct Candidate {
  Matrix sigma;
  Matrix h;
  double value = std::numeric_limits<double>::infinity();
};

// Alternate simplex blocks over sigma and the squash parameters.
Candidate alternate(const DeltaContext& ctx, Candidate start, const SolverSettings& settings) {
  NelderMeadOptions hopt;
  hopt.max_evals = std::min(settings.max_iter, 900);
  hopt.ftol = 1e-11;
  hopt.step = 0.5;
  hopt.restarts = 1;
  NelderMeadOptions sopt = hopt;
  sopt.max_evals = std::min(settings.max_iter, 400);

  Candidate cur = std::move(start);
  SigmaCache sc = ctx.cache(cur.sigma);
  cur.value = ctx.objective(sc, cur.h);
  for (int sweep = 0; sweep < 6; ++sweep) {
    const double before = cur.value;
    // X-update at fixed sigma.
    OptResult hr = nelder_mead_min(
        [&](const Eigen::VectorXd& th) { return ctx.objective(sc, herm_from_params(th, ctx.d)); },
        herm_params(cur.h), hopt);
    cur.h = herm_from_params(hr.x, ctx.d);
    cur.value = hr.value;
    // sigma-update at fixed X parameters.
    OptResult sr = nelder_mead_min(
        [&](const Eigen::VectorXd& th) {
          SigmaCache c2 = ctx.cache(inner::density_from_params(th, ctx.db));
          return ctx.objective(c2, cur.h);
        },
        inner::chol_params(cur.sigma), sopt);
    if (sr.value <= cur.value) {
      cur.sigma = inner::density_from_params(sr.x, ctx.db);
      cur.value = sr.value;
      sc = ctx.cache(cur.sigma);
    }
    if (before - cur.value < 1e-10) break;
  }
  return cur;
}

}  // namespace

SmoothingResult delta_smooth(const DensityOperator& rho_rb, double lambda,
                             const SolverSettings& settings, const SmoothingResult* warm) {
  settings.check();
  DeltaContext ctx(rho_rb, lambda);

  // D_max minimizer: if rho itself is dominated, the answer is exactly zero.
  SolverSettings dmax_settings = settings;
  dmax_settings.multistarts = std::max(2, settings.multistarts / 2);
  const double imax = max_information(rho_rb, dmax_settings);
  SmoothingResult out;
  {
    // Recover the minimizing sigma by a short search so the zero case returns
    // a concrete optimizer.
    auto dmax_obj = [&](const Eigen::VectorXd& th) {
      return d_max(ctx.rho, kron(ctx.rho_r, inner::density_from_params(th, ctx.db)));
    };
    NelderMeadOptions opt;
    opt.max_evals = 1500;
    opt.ftol = 1e-12;
    OptResult r = nelder_mead_min(dmax_obj, inner::chol_params(ctx.rho_b), opt);
    Matrix sigma_dm = inner::density_from_params(r.x, ctx.db);
    SigmaCache sc = ctx.cache(sigma_dm);
    const double res = ctx.residual(sc, ctx.rho);
    if (res <= 1e-8 && std::min(r.value, imax) <= lambda + 1e-6) {
      out.delta = 0.0;
      out.optimizer_state = ctx.rho;
      out.optimizer_sigma = sigma_dm;
      out.feasibility_residual = res;
      out.oracle_gap = 0.0;
      out.converged = true;
      return out;
    }
  }

  // Internal sampling oracle; its polished best also seeds the solver.
  Rng rng(mix_seed(settings.seed, 0x5a3d));
  Candidate oracle_best;
  for (int i = 0; i < kOracleSamples; ++i) {
    Candidate c;
    c.sigma = random_density_hs(ctx.db, rng);
    RealVector hv(ctx.d);
    for (int k = 0; k < ctx.d; ++k) hv[k] = logit(0.02 + 0.96 * rng.uniform());
    Matrix u = random_unitary(ctx.d, rng);
    c.h = hermitize(u * hv.asDiagonal() * u.adjoint());
    SigmaCache sc = ctx.cache(c.sigma);
    c.value = ctx.objective(sc, c.h);
    if (c.value < oracle_best.value) oracle_best = c;
  }
  {
    // Polish the best sample in the squash block only.
    SigmaCache sc = ctx.cache(oracle_best.sigma);
    NelderMeadOptions opt;
    opt.max_evals = 600;
    opt.ftol = 1e-11;
    OptResult r = nelder_mead_min(
        [&](const Eigen::VectorXd& th) { return ctx.objective(sc, herm_from_params(th, ctx.d)); },
        herm_params(oracle_best.h), opt);
    oracle_best.h = herm_from_params(r.x, ctx.d);
    oracle_best.value = r.value;
  }
  const double oracle_value = oracle_best.value;

  std::vector<Candidate> starts;
  if (warm && warm->optimizer_sigma.rows() == ctx.db) {
    Candidate c;
    c.sigma = warm->optimizer_sigma;
    c.h = ctx.h_from_target(ctx.cache(c.sigma), warm->optimizer_state);
    starts.push_back(std::move(c));
  }
  for (int k = 0; k < 2; ++k) {
    Candidate c;
    c.sigma = k == 0 ? ctx.rho_b : Matrix::Identity(ctx.db, ctx.db) / static_cast<double>(ctx.db);
    c.h = ctx.h_from_target(ctx.cache(c.sigma), ctx.rho);
    starts.push_back(std::move(c));
  }
  starts.push_back(oracle_best);

  Candidate best;
  for (auto& st : starts) {
    Candidate c = alternate(ctx, std::move(st), settings);
    if (c.value < best.value) best = c;
  }

  SigmaCache sc = ctx.cache(best.sigma);
  Matrix rt = ctx.rho_tilde(sc, best.h);
  out.delta = std::clamp(best.value, 0.0, 1.0);
  out.optimizer_state = rt;
  out.optimizer_sigma = best.sigma;
  out.feasibility_residual = ctx.residual(sc, rt);
  out.oracle_gap = oracle_value - out.delta;
  out.converged = out.feasibility_residual <= 1e-8 && out.oracle_gap >= -1e-9;
  return out;
}

std::vector<SmoothingResult> delta_grid(const DensityOperator& rho_rb,
                                        const std::vector<double>& lambdas,
                                        const SolverSettings& settings) {
  std::vector<size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lambdas[a] < lambdas[b]; });
  std::vector<SmoothingResult> out(lambdas.size());
  const SmoothingResult* warm = nullptr;
  SmoothingResult last;
  for (size_t idx : order) {
    out[idx] = delta_smooth(rho_rb, lambdas[idx], settings, warm);
    // A feasible point for a smaller lambda stays feasible, so chaining keeps
    // the grid monotone up to solver tolerance.
    if (out[idx].delta <= (warm ? last.delta : 1.0) + 1e-12) {
      last = out[idx];
      warm = &last;
    }
  }
  return out;
}

ExponentValue delta_exponent(const DensityOperator& rho_rb, double r,
                             const SolverSettings& settings) {
  settings.check();
  auto memo = std::make_shared<std::map<double, double>>();
  ExponentProvider p;
  p.i_alpha = [rho_rb, settings, memo](double alpha) {
    auto it = memo->find(alpha);
    if (it != memo->end()) return it->second;
    const double v = state_mi_alpha(rho_rb, alpha, settings).value;
    (*memo)[alpha] = v;
    return v;
  };
  p.i_vn = [rho_rb]() { return state_mi_vn(rho_rb); };
  // For a fixed state the max-information is computed directly (no ladder).
  p.i_max = [rho_rb, settings](bool* conv) {
    if (conv) *conv = true;
    return max_information(rho_rb, settings);
  };
  p.alpha_cap = settings.alpha_ladder_cap;
  return upper_exponent_core(p, r);
}

SmoothingResult converse_floor(const Channel& ch, const Matrix& rho_A, double c,
                               const SolverSettings& settings) {
  if (c <= 0) throw std::invalid_argument("converse_floor: c must be > 0");
  return delta_smooth(output_state(ch, rho_A), c, settings);
}

}  // namespace rss
