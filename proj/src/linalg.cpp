// SPDX-License-Identifier: Apache-2.0
#include "rss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rss {

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

EighResult eigh(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix not square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigh: eigensolver failed to converge (dim " << h.rows()
       << ", max|entry| " << max_abs(h) << ")";
    throw std::runtime_error(os.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

double power_scalar(double lambda, double p) {
  if (lambda <= kPowerClip) return 0.0;
  return std::pow(lambda, p);
}

bool is_integer(double p) { return p == std::nearbyint(p); }

}  // namespace

Matrix matrix_power(const EighResult& eig, double p) {
  const auto& lam = eig.eigenvalues;
  const int n = static_cast<int>(lam.size());
  if (!is_integer(p)) {
    const double scale = std::max(1.0, std::abs(lam[n - 1]));
    if (lam[0] < -kPsdClip * scale)
      throw std::domain_error("matrix_power: non-integer power of a non-PSD matrix");
  }
  RealVector f(n);
  if (is_integer(p) && p >= 0) {
    for (int i = 0; i < n; ++i) f[i] = std::pow(lam[i], p);
  } else {
    for (int i = 0; i < n; ++i) f[i] = power_scalar(lam[i], p);
  }
  return eig.eigenvectors * f.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix matrix_power(const Matrix& h, double p) { return matrix_power(eigh(h), p); }

Matrix power_frechet(const EighResult& eig, double p, const Matrix& direction) {
  const auto& lam = eig.eigenvalues;
  const Matrix& v = eig.eigenvectors;
  const int n = static_cast<int>(lam.size());
  Matrix d = v.adjoint() * direction * v;
  for (int i = 0; i < n; ++i) {
    const double fi = power_scalar(lam[i], p);
    const double dfi = lam[i] > kPowerClip ? p * std::pow(lam[i], p - 1.0) : 0.0;
    for (int j = 0; j < n; ++j) {
      const double fj = power_scalar(lam[j], p);
      double k;
      if (std::abs(lam[i] - lam[j]) > 1e-11 * std::max(1.0, std::abs(lam[i])))
        k = (fi - fj) / (lam[i] - lam[j]);
      else
        k = dfi;
      d(i, j) *= k;
    }
  }
  return v * d * v.adjoint();
}

DensityOperator DensityOperator::make(const Matrix& m, std::vector<int> dims) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density: matrix not square");
  const int d = static_cast<int>(m.rows());
  if (dims.empty()) dims = {d};
  const long prod = std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
  if (prod != d) throw std::invalid_argument("density: dims product does not match dimension");
  if (!is_hermitian(m)) throw std::invalid_argument("density: matrix not Hermitian within 1e-12");

  EighResult eig = eigh(hermitize(m));
  if (eig.eigenvalues[0] < -kPsdClip)
    throw std::invalid_argument("density: eigenvalue below -1e-10");
  RealVector lam = eig.eigenvalues.cwiseMax(0.0);
  const double tr = lam.sum();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw std::invalid_argument("density: trace deviates from 1 beyond 1e-10");
  lam /= tr;
  DensityOperator rho;
  rho.mat_ = eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint();
  rho.mat_ = hermitize(rho.mat_);
  rho.dims_ = std::move(dims);
  return rho;
}

DensityOperator DensityOperator::trusted(Matrix m, std::vector<int> dims) {
  DensityOperator rho;
  if (dims.empty()) dims = {static_cast<int>(m.rows())};
  rho.mat_ = std::move(m);
  rho.dims_ = std::move(dims);
  return rho;
}

namespace {

std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size());
  long acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int nsub = static_cast<int>(dims.size());
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
  std::vector<bool> kept(nsub, false);
  for (int k : keep) {
    if (k < 0 || k >= nsub) throw std::out_of_range("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  const auto strides = strides_of(dims);

  long dk = 1, dt = 1;
  std::vector<int> keep_dims, trace_dims;
  std::vector<long> keep_strides, trace_strides;
  for (int k = 0; k < nsub; ++k) {
    if (kept[k]) {
      dk *= dims[k];
      keep_dims.push_back(dims[k]);
      keep_strides.push_back(strides[k]);
    } else {
      dt *= dims[k];
      trace_dims.push_back(dims[k]);
      trace_strides.push_back(strides[k]);
    }
  }

  // Flatten a multi-index over the given dims into an offset in the full space.
  auto offsets = [](const std::vector<int>& sub_dims, const std::vector<long>& sub_strides) {
    long total = 1;
    for (int d : sub_dims) total *= d;
    std::vector<long> off(static_cast<size_t>(total));
    for (long x = 0; x < total; ++x) {
      long rem = x, o = 0;
      for (int k = static_cast<int>(sub_dims.size()) - 1; k >= 0; --k) {
        o += (rem % sub_dims[k]) * sub_strides[k];
        rem /= sub_dims[k];
      }
      off[static_cast<size_t>(x)] = o;
    }
    return off;
  };
  const auto koff = offsets(keep_dims, keep_strides);
  const auto toff = offsets(trace_dims, trace_strides);

  Matrix out = Matrix::Zero(dk, dk);
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j) {
      cxd acc = 0.0;
      for (long t = 0; t < dt; ++t) acc += m(koff[i] + toff[t], koff[j] + toff[t]);
      out(i, j) = acc;
    }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  Matrix out = partial_trace(rho.matrix(), rho.dims(), sorted);
  std::vector<int> dims;
  for (int k : sorted) dims.push_back(rho.dims()[k]);
  return DensityOperator::trusted(std::move(out), std::move(dims));
}

Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm) {
  const int nsub = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != nsub)
    throw std::invalid_argument("permute_subsystems: permutation length mismatch");
  std::vector<bool> seen(nsub, false);
  for (int p : perm) {
    if (p < 0 || p >= nsub || seen[p])
      throw std::invalid_argument("permute_subsystems: malformed permutation");
    seen[p] = true;
  }
  std::vector<int> new_dims(nsub);
  for (int k = 0; k < nsub; ++k) new_dims[perm[k]] = dims[k];
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(new_dims);

  const long total = m.rows();
  std::vector<long> map(static_cast<size_t>(total));
  for (long i = 0; i < total; ++i) {
    long rem = i, o = 0;
    for (int k = nsub - 1; k >= 0; --k) {
      o += (rem % dims[k]) * new_strides[perm[k]];
      rem /= dims[k];
    }
    map[static_cast<size_t>(i)] = o;
  }
  Matrix out(total, total);
  for (long i = 0; i < total; ++i)
    for (long j = 0; j < total; ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

DensityOperator permute_subsystems(const DensityOperator& rho, const std::vector<int>& perm) {
  Matrix out = permute_subsystems(rho.matrix(), rho.dims(), perm);
  std::vector<int> new_dims(rho.dims().size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[perm[k]] = rho.dims()[k];
  return DensityOperator::trusted(std::move(out), std::move(new_dims));
}

PureState purify(const DensityOperator& rho) {
  const int d = rho.dim();
  EighResult eig = eigh(rho.matrix());
  Vector amp = Vector::Zero(static_cast<long>(d) * d);
  int slot = 0;
  for (int i = 0; i < d; ++i) {
    const double lam = eig.eigenvalues[i];
    if (lam <= 1e-13) continue;
    Vector v = eig.eigenvectors.col(i);
    for (int a = 0; a < d; ++a) {
      if (std::abs(v[a]) > 1e-10) {
        v *= std::conj(v[a]) / std::abs(v[a]);
        break;
      }
    }
    amp.segment(static_cast<long>(slot) * d, d) = std::sqrt(lam) * v;
    ++slot;
  }
  return PureState{std::move(amp), {d, d}};
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  EighResult er = eigh(hermitize(rho));
  RealVector sq = er.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  Matrix root = er.eigenvectors * sq.asDiagonal() * er.eigenvectors.adjoint();
  Matrix t = root * hermitize(sigma) * root;
  Eigen::SelfAdjointEigenSolver<Matrix> ev(t, Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.eigenvalues().size(); ++i)
    f += std::sqrt(std::max(0.0, ev.eigenvalues()[i]));
  return std::clamp(f, 0.0, 1.0);
}

double purified_distance(const Matrix& rho, const Matrix& sigma) {
  const double f = fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  return fidelity(rho.matrix(), sigma.matrix());
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return purified_distance(rho.matrix(), sigma.matrix());
}

int distinct_eigenvalue_count(const Matrix& h, double rel_tol) {
  if (rel_tol <= 0) throw std::invalid_argument("distinct_eigenvalue_count: rel_tol must be > 0");
  Eigen::SelfAdjointEigenSolver<Matrix> ev(h, Eigen::EigenvaluesOnly);
  const RealVector& lam = ev.eigenvalues();
  const int n = static_cast<int>(lam.size());
  const double scale = std::max(std::max(std::abs(lam[0]), std::abs(lam[n - 1])), 1e-300);
  int count = 1;
  for (int i = 0; i + 1 < n; ++i)
    if (lam[i + 1] - lam[i] > rel_tol * scale) ++count;
  return count;
}

namespace {

std::uint64_t checked_u64(unsigned __int128 v, const char* what) {
  if (v > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error(what);
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t symmetric_subspace_dim(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("symmetric_subspace_dim: n, d must be >= 1");
  unsigned __int128 c = 1;
  for (int k = 1; k <= n; ++k) {
    c = c * static_cast<unsigned>(d - 1 + k);
    c /= static_cast<unsigned>(k);  // exact: C(d-1+k, k) is integral
    checked_u64(c, "symmetric_subspace_dim: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t symmetric_subspace_dim_bound(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("symmetric_subspace_dim_bound: n, d must be >= 1");
  unsigned __int128 b = 1;
  for (int k = 0; k < d - 1; ++k) {
    b *= static_cast<unsigned>(n + 1);
    checked_u64(b, "symmetric_subspace_dim_bound: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(b);
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Matrix symmetric_projector(int n, int d) {
  long total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  const auto perms = permutations(n);
  Matrix p = Matrix::Zero(total, total);
  const double w = 1.0 / static_cast<double>(perms.size());
  std::vector<int> digits(n);
  for (long j = 0; j < total; ++j) {
    long rem = j;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (const auto& pi : perms) {
      // W^pi sends the digit at slot k to slot pi[k].
      long target = 0;
      for (int k = 0; k < n; ++k) {
        long stride = 1;
        for (int m2 = pi[k] + 1; m2 < n; ++m2) stride *= d;
        target += digits[k] * stride;
      }
      p(target, j) += w;
    }
  }
  return p;
}

DensityOperator de_finetti_state(int n, int dA) {
  if (n < 1 || dA < 1) throw std::invalid_argument("de_finetti_state: n, dA must be >= 1");
  const int D = dA * dA;
  long total = 1;
  for (int k = 0; k < n; ++k) {
    total *= D;
    if (total > 4096) throw std::invalid_argument("de_finetti_state: total dimension exceeds 4096");
  }
  const double g = static_cast<double>(symmetric_subspace_dim(n, D));
  Matrix zeta = symmetric_projector(n, D) / g;

  // Subsystem layout is (R̄_1 A_1 ... R̄_n A_n); bring it to (R̄^n, A^n).
  std::vector<int> dims(static_cast<size_t>(2 * n), dA);
  std::vector<int> perm(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    perm[2 * i] = i;          // R̄_i -> slot i
    perm[2 * i + 1] = n + i;  // A_i -> slot n+i
  }
  zeta = permute_subsystems(zeta, dims, perm);
  std::vector<int> keep(static_cast<size_t>(n));
  std::iota(keep.begin(), keep.end(), n);
  std::vector<int> half(static_cast<size_t>(2 * n), dA);
  Matrix reduced = partial_trace(zeta, half, keep);
  return DensityOperator::trusted(std::move(reduced), std::vector<int>(static_cast<size_t>(n), dA));
}

}  // namespace rss
