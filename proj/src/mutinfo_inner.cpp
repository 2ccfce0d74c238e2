// SPDX-License-Identifier: Apache-2.0
#include "rss/mutinfo_inner.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rss/optim.hpp"

namespace rss::inner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

Matrix pseudo_power(const EighResult& eig, double p, double thresh) {
  RealVector f(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    f[i] = eig.eigenvalues[i] > thresh ? std::pow(eig.eigenvalues[i], p) : 0.0;
  return eig.eigenvectors * f.asDiagonal() * eig.eigenvectors.adjoint();
}

double support_thresh(const EighResult& eig) {
  const double top = eig.eigenvalues[eig.eigenvalues.size() - 1];
  return kPowerClip * std::max(1.0, top);
}

}  // namespace

Problem::Problem(Matrix rho_rb, int dr, int db, double a)
    : rho(std::move(rho_rb)), dim_r(dr), dim_b(db), alpha(a) {
  if (alpha <= 1.0) throw std::invalid_argument("inner: alpha must be > 1");
  if (rho.rows() != static_cast<long>(dr) * db)
    throw std::invalid_argument("inner: dims do not match state");
  rho = hermitize(rho);
  std::vector<int> dims = {dr, db};
  rho_r = partial_trace(rho, dims, {0});
  rho_r_eig = eigh(rho_r);
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  rho_r_gamma = pseudo_power(rho_r_eig, gamma, support_thresh(rho_r_eig));
}

// Shared evaluation core. Returns log2 tr M^alpha with M the sandwiched
// operator; optionally exposes the pieces needed for the gradient.
namespace {

struct EvalParts {
  Matrix x;          // rho_R^g ⊗ sigma^g
  EighResult m_eig;  // of M = X rho X
  double mu_max = 0.0;
  double q_hat = 0.0;  // sum (mu/mu_max)^alpha
  double log2_q = -kInf;
  EighResult sigma_eig;
  bool infinite = false;
};

bool eval_core(const Problem& p, const Matrix& sigma, bool need_vectors, EvalParts* parts) {
  EighResult se = eigh(sigma);
  const double sthresh = support_thresh(se);
  // When sigma is rank-deficient, mass of rho outside supp(rho_R ⊗ sigma)
  // sends the divergence to +inf.
  if (se.eigenvalues[0] <= sthresh) {
    double leak = 0.0;
    for (Eigen::Index i = 0; i < se.eigenvalues.size(); ++i) {
      if (se.eigenvalues[i] > sthresh) continue;
      Matrix proj = Matrix::Zero(p.dim_b, p.dim_b);
      proj += se.eigenvectors.col(i) * se.eigenvectors.col(i).adjoint();
      Matrix lifted = kron(Matrix::Identity(p.dim_r, p.dim_r), proj);
      leak += std::real((lifted * p.rho).trace());
    }
    if (leak > kSupportTol) {
      parts->infinite = true;
      return false;
    }
  }
  const double gamma = (1.0 - p.alpha) / (2.0 * p.alpha);
  Matrix sg = pseudo_power(se, gamma, sthresh);
  parts->sigma_eig = std::move(se);
  parts->x = kron(p.rho_r_gamma, sg);
  Matrix m = parts->x * p.rho * parts->x;
  m = hermitize(m);
  if (need_vectors) {
    parts->m_eig = eigh(m);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> ev(m, Eigen::EigenvaluesOnly);
    parts->m_eig.eigenvalues = ev.eigenvalues();
  }
  const RealVector& mu = parts->m_eig.eigenvalues;
  parts->mu_max = mu[mu.size() - 1];
  if (parts->mu_max <= 0) {
    parts->infinite = true;
    return false;
  }
  double qh = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu[i] <= 0) continue;
    qh += std::pow(mu[i] / parts->mu_max, p.alpha);
  }
  parts->q_hat = qh;
  parts->log2_q = p.alpha * std::log2(parts->mu_max) + std::log2(qh);
  return true;
}

}  // namespace

double Problem::objective(const Matrix& sigma) const {
  EvalParts parts;
  if (!eval_core(*this, sigma, false, &parts)) return kInf;
  return parts.log2_q / (alpha - 1.0);
}

double Problem::objective_grad(const Matrix& sigma, Matrix* grad) const {
  EvalParts parts;
  if (!eval_core(*this, sigma, true, &parts)) return kInf;

  // M̂^(alpha-1) in the eigenbasis of M, normalized by mu_max to stay finite
  // for large alpha.
  const RealVector& mu = parts.m_eig.eigenvalues;
  RealVector f(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    f[i] = mu[i] > 0 ? std::pow(mu[i] / parts.mu_max, alpha - 1.0) : 0.0;
  Matrix m_pow =
      parts.m_eig.eigenvectors * f.asDiagonal() * parts.m_eig.eigenvectors.adjoint();

  Matrix s = rho * parts.x * m_pow;
  s = (s + s.adjoint()).eval();  // Hermitian combination rho X M^(a-1) + h.c.
  Matrix lifted = s * kron(rho_r_gamma, Matrix::Identity(dim_b, dim_b));
  std::vector<int> dims = {dim_r, dim_b};
  Matrix t = partial_trace(lifted, dims, {1});
  t = hermitize(t);

  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  Matrix dpow = power_frechet(parts.sigma_eig, gamma, t);
  // dD/dsigma = alpha/( (alpha-1) ln2 ) * dpow / (mu_max * q_hat)
  *grad = (alpha / ((alpha - 1.0) * kLn2 * parts.mu_max * parts.q_hat)) * dpow;
  *grad = hermitize(*grad);
  return parts.log2_q / (alpha - 1.0);
}

Eigen::VectorXd chol_params(const Matrix& density) {
  const int d = static_cast<int>(density.rows());
  Matrix m = hermitize(density) + 1e-12 * Matrix::Identity(d, d);
  Eigen::LLT<Matrix> llt(m);
  Matrix l = llt.matrixL();
  Eigen::VectorXd th(d * d);
  int pos = 0;
  for (int i = 0; i < d; ++i) th[pos++] = std::real(l(i, i));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      th[pos++] = std::real(l(i, j));
      th[pos++] = std::imag(l(i, j));
    }
  return th;
}

Matrix density_from_params(const Eigen::VectorXd& theta, int d) {
  Matrix l = Matrix::Zero(d, d);
  int pos = 0;
  for (int i = 0; i < d; ++i) l(i, i) = theta[pos++];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      l(i, j) = cxd(theta[pos], theta[pos + 1]);
      pos += 2;
    }
  Matrix m = l * l.adjoint();
  const double tr = std::real(m.trace());
  if (tr < 1e-150) return Matrix::Identity(d, d) / static_cast<double>(d);
  return m / tr;
}

namespace {

// Mirror descent on the density manifold: sigma = exp(L)/tr, updating
// L <- L - t * grad. Warm-startable and quadratically cheap per step at these
// dimensions.
Result mirror_descent(const Problem& p, const Matrix& sigma0, double ftol, int max_iter) {
  const int d = p.dim_b;
  Matrix sigma = hermitize(sigma0);
  {
    // Keep the start strictly positive so log is finite.
    EighResult se = eigh(sigma);
    RealVector lam = se.eigenvalues.cwiseMax(1e-12);
    sigma = se.eigenvectors * lam.asDiagonal() * se.eigenvectors.adjoint();
    sigma /= std::real(sigma.trace());
  }
  EighResult se = eigh(sigma);
  Matrix logs = Matrix::Zero(d, d);
  {
    RealVector ll(se.eigenvalues.size());
    for (Eigen::Index i = 0; i < ll.size(); ++i) ll[i] = std::log(std::max(se.eigenvalues[i], 1e-300));
    logs = se.eigenvectors * ll.asDiagonal() * se.eigenvectors.adjoint();
  }

  Result out;
  Matrix grad(d, d);
  double f = p.objective_grad(sigma, &grad);
  out.evals = 1;
  double t = 1.0;
  double last_gain = kInf;
  bool done = false;
  for (int iter = 0; iter < max_iter && !done; ++iter) {
    // Projected stationarity: gradient minus its trace component, weighted by
    // the current state.
    Matrix gp = grad - std::real((sigma * grad).trace()) * Matrix::Identity(d, d);
    const double station = std::sqrt(std::abs(std::real((sigma * gp * gp).trace())));
    if (station < 1e-3 * ftol + 1e-13) {
      done = true;
      break;
    }

    bool accepted = false;
    double f_new = f;
    Matrix sigma_new, logs_new;
    for (int ls = 0; ls < 40; ++ls) {
      logs_new = logs - t * grad;
      EighResult le = eigh(hermitize(logs_new));
      // exp and normalize in one pass, in log space for safety.
      const double top = le.eigenvalues[le.eigenvalues.size() - 1];
      RealVector w(le.eigenvalues.size());
      double z = 0.0;
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        w[i] = std::exp(le.eigenvalues[i] - top);
        z += w[i];
      }
      w /= z;
      sigma_new = le.eigenvectors * w.asDiagonal() * le.eigenvectors.adjoint();
      logs_new = hermitize(logs_new) - (top + std::log(z)) * Matrix::Identity(d, d);
      f_new = p.objective(sigma_new);
      ++out.evals;
      if (f_new < f - 1e-15) {
        accepted = true;
        break;
      }
      t *= 0.5;
      if (t < 1e-14) break;
    }
    if (!accepted) {
      // Step collapse: at the numerical floor this is convergence.
      done = last_gain < 1e3 * ftol;
      break;
    }
    last_gain = f - f_new;
    sigma = std::move(sigma_new);
    logs = std::move(logs_new);
    f = p.objective_grad(sigma, &grad);
    ++out.evals;
    t = std::min(t * 1.6, 1e3);
    if (last_gain < ftol && iter > 3) done = true;
  }
  out.value = f;
  out.sigma = std::move(sigma);
  out.converged = done;
  return out;
}

}  // namespace

Result solve_fast(const Problem& p, const SolverSettings& s, const Matrix* warm) {
  const int d = p.dim_b;
  const double ftol = 0.5 * s.inner_tol;
  const int max_iter = std::min(s.max_iter, 600);
  Matrix start;
  if (warm && warm->rows() == d)
    start = *warm;
  else {
    std::vector<int> dims = {p.dim_r, p.dim_b};
    start = partial_trace(p.rho, dims, {1});  // marginal on B
    start = 0.5 * (start + Matrix::Identity(d, d) / static_cast<double>(d));
  }
  Result r = mirror_descent(p, start, ftol, max_iter);
  if (!r.converged || !std::isfinite(r.value)) {
    // Stalled: fall back to the marginal start.
    std::vector<int> dims = {p.dim_r, p.dim_b};
    Matrix alt = partial_trace(p.rho, dims, {1});
    Result r2 = mirror_descent(p, alt, ftol, max_iter);
    r2.evals += r.evals;
    if (std::isfinite(r2.value) && (r2.value < r.value || !std::isfinite(r.value))) return r2;
    r.evals = r2.evals;
  }
  return r;
}

Result solve_reference(const Problem& p, const SolverSettings& s, double* start_spread) {
  const int d = p.dim_b;
  std::vector<int> dims = {p.dim_r, p.dim_b};
  Matrix rho_b = partial_trace(p.rho, dims, {1});
  const Matrix iden = Matrix::Identity(d, d) / static_cast<double>(d);

  auto objective = [&](const Eigen::VectorXd& th) {
    return p.objective(density_from_params(th, d));
  };
  NelderMeadOptions opt;
  opt.max_evals = std::min(s.max_iter, 5000);
  opt.ftol = std::min(1e-12, 0.01 * s.inner_tol);
  opt.xtol = 1e-9;
  opt.step = 0.25;
  opt.restarts = 2;

  Result best;
  best.value = kInf;
  double other = kInf;
  for (int k = 0; k < 2; ++k) {
    const Matrix& start = k == 0 ? rho_b : iden;
    OptResult r = nelder_mead_min(objective, chol_params(start), opt);
    if (r.value < best.value) {
      other = best.value;
      best.value = r.value;
      best.sigma = density_from_params(r.x, d);
      best.converged = r.converged;
    } else {
      other = std::min(other, r.value);
    }
    best.evals += r.evals;
  }
  if (start_spread) *start_spread = std::isfinite(other) ? other - best.value : 0.0;

  // Bounded gradient polish; tightens the minimizer without changing the
  // reference value beyond inner_tol on healthy instances.
  Result polished = mirror_descent(p, best.sigma, 0.02 * s.inner_tol, 200);
  polished.evals += best.evals;
  if (polished.value <= best.value) {
    polished.converged = best.converged && (best.value - polished.value) <= s.inner_tol;
    return polished;
  }
  best.evals = polished.evals;
  return best;
}

}  // namespace rss::inner
