// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rss/linalg.hpp"
#include "rss/random.hpp"

using namespace rss;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix bell_state() {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - Matrix::Identity(4, 4)) == 0.0);
  Matrix d = diag2(1, 0);
  Matrix k = kron(d, d);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  CHECK(max_abs(k - expect) == 0.0);
}

TEST_CASE("kron matches the four-index formula on random input") {
  Rng rng(7);
  Matrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
  Matrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          CHECK(std::abs(k(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) < 1e-14);
}

TEST_CASE("eigh on known spectra and reconstruction") {
  CHECK(eigh(diag2(3, 1)).eigenvalues[0] == doctest::Approx(1.0));
  CHECK(eigh(diag2(3, 1)).eigenvalues[1] == doctest::Approx(3.0));
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EighResult ex = eigh(x);
  CHECK(ex.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(ex.eigenvalues[1] == doctest::Approx(1.0));

  Rng rng(11);
  Matrix h = random_hermitian(6, rng);
  EighResult e = eigh(h);
  Matrix rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
  CHECK(max_abs(rec - h) < 1e-10);
  CHECK(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - Matrix::Identity(6, 6)) < 1e-10);
}

TEST_CASE("matrix_power identity, scalar, and inverse composition") {
  Rng rng(3);
  Matrix rho = random_density_hs(3, rng);
  CHECK(max_abs(matrix_power(rho, 1.0) - rho) < 1e-12);
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs(matrix_power(half, -0.5) - std::sqrt(2.0) * Matrix::Identity(2, 2)) < 1e-12);
  Matrix p = matrix_power(rho, 0.3);
  CHECK(max_abs(matrix_power(p, 1.0 / 0.3) - rho) < 1e-8);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  CHECK_THROWS_AS(matrix_power(x, 0.5), std::domain_error);
}

TEST_CASE("power_frechet matches finite differences") {
  Rng rng(5);
  Matrix s = random_density_hs(3, rng) + 0.2 * Matrix::Identity(3, 3);
  s /= s.trace().real();
  Matrix h = random_hermitian(3, rng);
  EighResult se = eigh(s);
  Matrix an = power_frechet(se, -0.35, h);
  const double eps = 1e-6;
  Matrix fd = (matrix_power(s + eps * h, -0.35) - matrix_power(s - eps * h, -0.35)) / (2 * eps);
  CHECK(max_abs(an - fd) < 1e-6);
}

TEST_CASE("partial trace marginals") {
  Matrix bell = bell_state();
  Matrix half = partial_trace(bell, {2, 2}, {0});
  CHECK(max_abs(half - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  Rng rng(13);
  Matrix a = random_density_hs(2, rng), b = random_density_hs(3, rng);
  CHECK(max_abs(partial_trace(kron(a, b), {2, 3}, {0}) - a) < 1e-12);

  // Index-sum oracle on a random 2x3 bipartite state.
  Matrix rho = random_density_hs(6, rng);
  Matrix got = partial_trace(rho, {2, 3}, {0});
  Matrix want = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int t = 0; t < 3; ++t) want(i, j) += rho(3 * i + t, 3 * j + t);
  CHECK(max_abs(got - want) < 1e-12);
  CHECK(std::abs(got.trace().real() - 1.0) < 1e-12);

  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {2}), std::out_of_range);
}

TEST_CASE("permute_subsystems swap and involution") {
  Rng rng(17);
  Matrix a = random_density_hs(2, rng), b = random_density_hs(2, rng);
  Matrix ab = kron(a, b);
  CHECK(max_abs(permute_subsystems(ab, {2, 2}, {0, 1}) - ab) == 0.0);
  CHECK(max_abs(permute_subsystems(ab, {2, 2}, {1, 0}) - kron(b, a)) < 1e-14);
  Matrix rho = random_density_hs(4, rng);
  Matrix twice = permute_subsystems(permute_subsystems(rho, {2, 2}, {1, 0}), {2, 2}, {1, 0});
  CHECK(max_abs(twice - rho) < 1e-12);
  CHECK_THROWS_AS(permute_subsystems(rho, {2, 2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("purify conventions and round trip") {
  // Pure input: single product term with the support mapped to |0>_R.
  Matrix e0 = diag2(1, 0);
  PureState p = purify(DensityOperator::make(e0));
  Vector expect = Vector::Zero(4);
  expect[0] = 1.0;
  CHECK((p.amplitudes - expect).norm() < 1e-10);

  PureState mes = purify(DensityOperator::make(0.5 * Matrix::Identity(2, 2)));
  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CHECK((mes.amplitudes - bell).norm() < 1e-10);

  Rng rng(19);
  DensityOperator rho = DensityOperator::make(random_density_hs(3, rng));
  PureState q = purify(rho);
  CHECK(std::abs(q.amplitudes.norm() - 1.0) < 1e-12);
  Matrix back = partial_trace(q.projector(), {3, 3}, {1});
  CHECK(max_abs(back - rho.matrix()) < 1e-10);
}

TEST_CASE("fidelity and purified distance") {
  Rng rng(23);
  Matrix rho = random_density_hs(3, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  Matrix e0 = diag2(1, 0), e1 = diag2(0, 1);
  CHECK(fidelity(e0, e1) == doctest::Approx(0.0));
  CHECK(purified_distance(e0, e1) == doctest::Approx(1.0));
  CHECK(purified_distance(rho, rho) < 1e-6);

  //

  // Commuting pair: Bhattacharyya sum.
  Matrix p = diag2(0.7, 0.3), q = diag2(0.2, 0.8);
  const double expect = std::sqrt(0.7 * 0.2) + std::sqrt(0.3 * 0.8);
  CHECK(fidelity(p, q) == doctest::Approx(expect).epsilon(1e-12));

  // Qubit pair with F = 1/sqrt(2).
  Matrix psi = Matrix::Zero(2, 2);
  psi(0, 0) = 1.0;
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(fidelity(psi, plus) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(purified_distance(psi, plus) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fidelity is symmetric and unitarily invariant") {
  Rng rng(29);
  for (int t = 0; t < 5; ++t) {
    Matrix rho = random_density_hs(3, rng), sig = random_density_hs(3, rng);
    Matrix u = random_unitary(3, rng);
    const double f = fidelity(rho, sig);
    CHECK(std::abs(f - fidelity(sig, rho)) < 1e-10);
    CHECK(std::abs(f - fidelity(u * rho * u.adjoint(), u * sig * u.adjoint())) < 1e-10);
  }
}

TEST_CASE("purified distance triangle inequality") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_density_hs(2, rng), b = random_density_hs(2, rng),
           c = random_density_hs(2, rng);
    CHECK(purified_distance(a, c) <=
          purified_distance(a, b) + purified_distance(b, c) + 1e-9);
  }
}

TEST_CASE("distinct eigenvalue clustering") {
  CHECK(distinct_eigenvalue_count(Matrix::Identity(4, 4)) == 1);
  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = 0.5;
  d(1, 1) = 0.25;
  d(2, 2) = 0.125;
  d(3, 3) = 0.125;
  CHECK(distinct_eigenvalue_count(d) == 3);

  // Product spectra: generic 2x2 pair gives 4 distinct products.
  Matrix a = diag2(0.7, 0.3), b = diag2(0.6, 0.4);
  Matrix prod = kron(a, b);
  int expected = 0;
  std::vector<double> vals = {0.7 * 0.6, 0.7 * 0.4, 0.3 * 0.6, 0.3 * 0.4};
  std::sort(vals.begin(), vals.end());
  expected = 1;
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i + 1] - vals[i] > 1e-8 * vals.back()) ++expected;
  CHECK(distinct_eigenvalue_count(prod) == expected);
  CHECK(expected == 4);
}

TEST_CASE("symmetric subspace dimensions") {
  CHECK(symmetric_subspace_dim(1, 4) == 4);
  CHECK(symmetric_subspace_dim(2, 4) == 10);
  CHECK(symmetric_subspace_dim_bound(2, 4) == 27);

  // Exhaustive multiset count for n=3, d=9.
  int count = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = a; b < 9; ++b)
      for (int c = b; c < 9; ++c) ++count;
  CHECK(symmetric_subspace_dim(3, 9) == static_cast<std::uint64_t>(count));
  CHECK(count == 165);

  CHECK_THROWS_AS(symmetric_subspace_dim(400, 64), std::overflow_error);
}

TEST_CASE("de Finetti state basics") {
  DensityOperator one = de_finetti_state(1, 2);
  CHECK(max_abs(one.matrix() - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  DensityOperator zeta = de_finetti_state(2, 2);
  CHECK(std::abs(zeta.matrix().trace().real() - 1.0) < 1e-12);
  Matrix swapped = permute_subsystems(zeta.matrix(), {2, 2}, {1, 0});
  CHECK(max_abs(swapped - zeta.matrix()) < 1e-12);

  CHECK_THROWS_AS(de_finetti_state(4, 4), std::invalid_argument);
}

TEST_CASE("de Finetti state matches Monte-Carlo average of product states") {
  // zeta_{A^2} should equal the Hilbert-Schmidt average of rho^(x)2.
  Rng rng(424242);
  Matrix acc = Matrix::Zero(4, 4);
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    Matrix rho = random_density_hs(2, rng);
    acc += kron(rho, rho);
  }
  acc /= static_cast<double>(samples);
  CHECK(max_abs(acc - de_finetti_state(2, 2).matrix()) < 2e-2);
}

TEST_CASE("density operator validation") {
  Matrix bad = diag2(1.2, -0.2);
  CHECK_THROWS_AS(DensityOperator::make(bad), std::invalid_argument);
  Matrix nonherm(2, 2);
  nonherm << 1, 0.5, 0, 0;
  CHECK_THROWS_AS(DensityOperator::make(nonherm), std::invalid_argument);
  Matrix drift = diag2(0.5 + 4e-11, 0.5 - 5e-11);
  DensityOperator ok = DensityOperator::make(drift);
  CHECK(std::abs(ok.matrix().trace().real() - 1.0) < 1e-15);
  CHECK_THROWS_AS(DensityOperator::make(diag2(0.7, 0.7)), std::invalid_argument);
}
