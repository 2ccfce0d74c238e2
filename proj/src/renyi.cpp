// SPDX-License-Identifier: Apache-2.0
#include "rss/renyi.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace rss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mass of x outside the support of the eigendecomposition eig (support =
// eigenvalues above threshold).
double support_leak(const Matrix& x, const EighResult& eig, double thresh) {
  double leak = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > thresh) continue;
    const Vector v = eig.eigenvectors.col(i);
    leak += std::real(v.dot(x * v));
  }
  return leak;
}

double support_threshold(const EighResult& eig) {
  const double lmax = eig.eigenvalues.size() ? eig.eigenvalues[eig.eigenvalues.size() - 1] : 0.0;
  return kPowerClip * std::max(1.0, lmax);
}

}  // namespace

double log2_q_alpha(const Matrix& x, const Matrix& y, double alpha) {
  if (x.rows() != y.rows()) throw std::invalid_argument("q_alpha: dimension mismatch");
  if (alpha <= 0 || alpha == 1.0) throw std::invalid_argument("q_alpha: alpha must be > 0 and != 1");
  EighResult ye = eigh(hermitize(y));
  const double thresh = support_threshold(ye);
  if (alpha > 1.0 && support_leak(x, ye, thresh) > kSupportTol) return kInf;

  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  RealVector f(ye.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    f[i] = ye.eigenvalues[i] > thresh ? std::pow(ye.eigenvalues[i], gamma) : 0.0;
  Matrix ypow = ye.eigenvectors * f.asDiagonal() * ye.eigenvectors.adjoint();
  Matrix m = ypow * hermitize(x) * ypow;
  Eigen::SelfAdjointEigenSolver<Matrix> ev(m, Eigen::EigenvaluesOnly);

  // log2 sum_i mu_i^alpha via log-sum-exp, stable for large alpha.
  double top = -kInf;
  std::vector<double> logs;
  for (Eigen::Index i = 0; i < ev.eigenvalues().size(); ++i) {
    const double mu = ev.eigenvalues()[i];
    if (mu <= 0) continue;
    const double l = alpha * std::log2(mu);
    logs.push_back(l);
    top = std::max(top, l);
  }
  if (logs.empty()) return -kInf;
  double acc = 0.0;
  for (double l : logs) acc += std::exp2(l - top);
  return top + std::log2(acc);
}

double q_alpha(const Matrix& x, const Matrix& y, double alpha) {
  return std::exp2(log2_q_alpha(x, y, alpha));
}

double d_alpha(const Matrix& rho, const Matrix& sigma, double alpha) {
  if (alpha <= 0) throw std::invalid_argument("d_alpha: alpha must be > 0");
  if (alpha == 1.0) return umegaki(rho, sigma);
  const double lq = log2_q_alpha(rho, sigma, alpha);
  if (std::isinf(lq) && lq > 0) return kInf;
  return lq / (alpha - 1.0);
}

double d_max(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("d_max: dimension mismatch");
  EighResult se = eigh(hermitize(sigma));
  const double thresh = support_threshold(se);
  if (support_leak(rho, se, thresh) > kSupportTol) return kInf;
  RealVector f(se.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    f[i] = se.eigenvalues[i] > thresh ? 1.0 / std::sqrt(se.eigenvalues[i]) : 0.0;
  Matrix inv_sqrt = se.eigenvectors * f.asDiagonal() * se.eigenvectors.adjoint();
  Matrix m = inv_sqrt * hermitize(rho) * inv_sqrt;
  Eigen::SelfAdjointEigenSolver<Matrix> ev(m, Eigen::EigenvaluesOnly);
  const double lmax = ev.eigenvalues()[ev.eigenvalues().size() - 1];
  if (lmax <= 0) return -kInf;
  return std::log2(lmax);
}

double umegaki(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("umegaki: dimension mismatch");
  EighResult se = eigh(hermitize(sigma));
  const double thresh = support_threshold(se);
  if (support_leak(rho, se, thresh) > kSupportTol) return kInf;
  EighResult re = eigh(hermitize(rho));

  double h = 0.0;  // tr rho log2 rho
  for (Eigen::Index i = 0; i < re.eigenvalues.size(); ++i) {
    const double l = re.eigenvalues[i];
    if (l > 0) h += l * std::log2(l);
  }
  double cross = 0.0;  // tr rho log2 sigma, on supp(sigma)
  for (Eigen::Index i = 0; i < se.eigenvalues.size(); ++i) {
    const double s = se.eigenvalues[i];
    if (s <= thresh) continue;
    const Vector v = se.eigenvectors.col(i);
    cross += std::log2(s) * std::real(v.dot(hermitize(rho) * v));
  }
  return h - cross;
}

double von_neumann(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> ev(hermitize(rho), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.eigenvalues().size(); ++i) {
    const double l = ev.eigenvalues()[i];
    if (l > 0) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace rss
