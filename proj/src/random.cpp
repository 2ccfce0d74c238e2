// SPDX-License-Identifier: Apache-2.0
#include "rss/random.hpp"

#include <Eigen/QR>

namespace rss {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector random_pure(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.cnormal();
  v /= v.norm();
  return v;
}

Matrix random_ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
  return g;
}

Matrix random_density_hs(int dim, Rng& rng) {
  Matrix g = random_ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

Matrix random_hermitian(int dim, Rng& rng) {
  return hermitize(random_ginibre(dim, dim, rng));
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
  Matrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    cxd d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_unitary(int dim, Rng& rng) { return random_isometry(dim, dim, rng); }

}  // namespace rss
