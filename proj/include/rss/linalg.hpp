// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_LINALG_HPP
#define RSS_LINALG_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace rss {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerances shared across the library.
inline constexpr double kHermTol = 1e-12;      // allowed ‖H - H†‖_max
inline constexpr double kPsdClip = 1e-10;      // eigenvalues below -kPsdClip are an error
inline constexpr double kTraceTol = 1e-10;     // allowed |tr - 1| on states
inline constexpr double kPowerClip = 1e-12;    // eigenvalues treated as zero in matrix powers
inline constexpr double kSupportTol = 1e-9;    // tolerated mass outside a support projector

struct EighResult {
  RealVector eigenvalues;   // ascending
  Matrix eigenvectors;      // columns
};

bool is_hermitian(const Matrix& m, double tol = kHermTol);
Matrix hermitize(const Matrix& m);
double max_abs(const Matrix& m);
double trace_norm(const Matrix& m);

// Eigendecomposition of a Hermitian matrix. Throws std::runtime_error carrying
// the matrix norm if the solver does not converge.
EighResult eigh(const Matrix& h);

Matrix kron(const Matrix& a, const Matrix& b);

// Spectral power V diag(f(lambda)) V†. For non-integer p the input must be PSD
// up to -kPsdClip. Eigenvalues below kPowerClip map to 0; negative p acts as a
// pseudo-power on the support.
Matrix matrix_power(const Matrix& h, double p);
Matrix matrix_power(const EighResult& eig, double p);

// Daleckii-Krein transform: directional derivative of X -> X^p at the matrix
// with the given eigendecomposition, applied to a Hermitian direction.
Matrix power_frechet(const EighResult& eig, double p, const Matrix& direction);

// A Hermitian PSD unit-trace operator together with an ordered subsystem split.
class DensityOperator {
 public:
  DensityOperator() = default;

  // Validating constructor: hermiticity within kHermTol (then symmetrized),
  // eigenvalues >= -kPsdClip (then clipped), |trace-1| <= kTraceTol (then
  // renormalized). dims defaults to the single full system.
  static DensityOperator make(const Matrix& m, std::vector<int> dims = {});

  // No validation; for internal hot paths where PSD/trace hold by construction.
  static DensityOperator trusted(Matrix m, std::vector<int> dims = {});

  const Matrix& matrix() const { return mat_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

 private:
  Matrix mat_;
  std::vector<int> dims_;
};

struct PureState {
  Vector amplitudes;
  std::vector<int> dims;
  int dim() const { return static_cast<int>(amplitudes.size()); }
  Matrix projector() const { return amplitudes * amplitudes.adjoint(); }
};

// Partial trace keeping the listed subsystems (ascending order preserved).
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

// Conjugation by the natural representation of a permutation: the content of
// subsystem slot k moves to slot perm[k].
Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm);
DensityOperator permute_subsystems(const DensityOperator& rho, const std::vector<int>& perm);

// Eigenbasis purification on R⊗A with |R| = dim(rho). Support eigenvalues are
// enumerated in ascending order onto the lowest R basis states; each
// eigenvector's first nonzero amplitude is rotated real positive.
PureState purify(const DensityOperator& rho);

// Uhlmann fidelity ‖√rho √sigma‖₁, clipped to [0,1].
double fidelity(const Matrix& rho, const Matrix& sigma);
double purified_distance(const Matrix& rho, const Matrix& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Cluster count of the spectrum: consecutive (ascending) eigenvalues belong to
// one cluster when their gap is <= rel_tol * max|eigenvalue|.
int distinct_eigenvalue_count(const Matrix& h, double rel_tol = 1e-8);

// binomial(n+d-1, n), exact; throws std::overflow_error beyond 64 bits.
std::uint64_t symmetric_subspace_dim(int n, int d);
// The (n+1)^(d-1) upper bound, same overflow behavior.
std::uint64_t symmetric_subspace_dim_bound(int n, int d);

// All permutations of {0,...,n-1}.
std::vector<std::vector<int>> permutations(int n);

// Projector onto the symmetric subspace of (C^d)^(⊗n).
Matrix symmetric_projector(int n, int d);

// Reduction to A^n of the maximally mixed state on the symmetric subspace of
// (C^{dA^2})^(⊗n) under the (R̄,A) factorization of each copy. Guarded to
// total dimension (dA^2)^n <= 4096.
DensityOperator de_finetti_state(int n, int dA);

}  // namespace rss

#endif
