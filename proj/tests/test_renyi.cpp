// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rss/linalg.hpp"
#include "rss/random.hpp"
#include "rss/renyi.hpp"

using namespace rss;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<long>(v.size()), static_cast<long>(v.size()));
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

// Classical sandwiched divergence for commuting pairs: sum p^a q^(1-a).
double classical_d_alpha(const std::vector<double>& p, const std::vector<double>& q,
                         double alpha) {
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) acc += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  return std::log2(acc) / (alpha - 1.0);
}

}  // namespace

TEST_CASE("q_alpha anchors") {
  Rng rng(41);
  Matrix rho = random_density_hs(3, rng);
  for (double a : {0.5, 1.5, 2.0}) CHECK(q_alpha(rho, rho, a) == doctest::Approx(1.0).epsilon(1e-10));

  // diag(1,0) vs I/2 at alpha=2: classical sum p^2 q^-1 = 2.
  CHECK(q_alpha(diag({1, 0}), 0.5 * Matrix::Identity(2, 2), 2.0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Random commuting pair matches the classical formula.
  std::vector<double> p = {0.6, 0.3, 0.1}, q = {0.2, 0.5, 0.3};
  Matrix pm = diag({0.6, 0.3, 0.1}), qm = diag({0.2, 0.5, 0.3});
  for (double a : {1.2, 1.7, 2.0}) {
    double expect = 0.0;
    for (size_t i = 0; i < 3; ++i) expect += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
    CHECK(q_alpha(pm, qm, a) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("d_alpha anchors and support handling") {
  Rng rng(43);
  Matrix rho = random_density_hs(2, rng);
  for (double a : {1.3, 2.0}) CHECK(std::abs(d_alpha(rho, rho, a)) < 1e-9);

  // Pure state against the maximally mixed: 1 bit for every alpha.
  Matrix e0 = diag({1, 0});
  for (double a : {0.7, 1.0, 1.5, 2.0, 32.0})
    CHECK(d_alpha(e0, 0.5 * Matrix::Identity(2, 2), a) == doctest::Approx(1.0).epsilon(1e-10));

  // Commuting oracle at alpha=1.5.
  Matrix pm = diag({0.8, 0.15, 0.05}), qm = diag({0.3, 0.4, 0.3});
  CHECK(d_alpha(pm, qm, 1.5) ==
        doctest::Approx(classical_d_alpha({0.8, 0.15, 0.05}, {0.3, 0.4, 0.3}, 1.5))
            .epsilon(1e-10));

  // Support violation with alpha > 1 diverges.
  CHECK(d_alpha(0.5 * Matrix::Identity(2, 2), e0, 1.5) == kInf);
}

TEST_CASE("d_alpha structural properties on random pairs") {
  Rng rng(47);
  for (int t = 0; t < 5; ++t) {
    Matrix rho = random_density_hs(4, rng), sig = random_density_hs(4, rng);

    // Monotone in alpha.
    double prev = -1e9;
    for (double a : {1.05, 1.3, 1.6, 2.0}) {
      const double v = d_alpha(rho, sig, a);
      CHECK(v >= prev - 1e-9);
      prev = v;
    }

    // Unitary invariance.
    Matrix u = random_unitary(4, rng);
    CHECK(std::abs(d_alpha(u * rho * u.adjoint(), u * sig * u.adjoint(), 1.7) -
                   d_alpha(rho, sig, 1.7)) < 1e-9);

    // Additivity on tensor products.
    Matrix rho2 = random_density_hs(2, rng), sig2 = random_density_hs(2, rng);
    CHECK(std::abs(d_alpha(kron(rho, rho2), kron(sig, sig2), 1.5) -
                   d_alpha(rho, sig, 1.5) - d_alpha(rho2, sig2, 1.5)) < 1e-9);

    // Data processing under partial trace.
    for (double a : {1.0, 1.5, 2.0}) {
      const double full = d_alpha(rho, sig, a);
      const double reduced = d_alpha(partial_trace(rho, {2, 2}, {0}),
                                     partial_trace(sig, {2, 2}, {0}), a);
      CHECK(reduced <= full + 1e-9);
    }
  }
}

TEST_CASE("d_max anchors") {
  Rng rng(53);
  Matrix rho = random_density_hs(3, rng);
  CHECK(std::abs(d_max(rho, rho)) < 1e-9);
  CHECK(d_max(diag({1, 0}), 0.5 * Matrix::Identity(2, 2)) == doctest::Approx(1.0));

  // Maximally entangled vs product of maximally mixed: 2 log2 d.
  for (int d : {2, 3}) {
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    Matrix phi = v * v.adjoint();
    Matrix pi = Matrix::Identity(d * d, d * d) / static_cast<double>(d * d);
    CHECK(d_max(phi, pi) == doctest::Approx(2.0 * std::log2(d)).epsilon(1e-10));
  }

  CHECK(d_max(0.5 * Matrix::Identity(2, 2), diag({1, 0})) == kInf);
}

TEST_CASE("umegaki and von Neumann") {
  CHECK(von_neumann(0.5 * Matrix::Identity(2, 2)) == doctest::Approx(1.0));
  Rng rng(59);
  Matrix rho = random_density_hs(3, rng);
  CHECK(std::abs(umegaki(rho, rho)) < 1e-10);

  // alpha -> 1 continuity against the Umegaki value on full-rank qubit pairs.
  for (int t = 0; t < 5; ++t) {
    Matrix a = random_density_hs(2, rng), b = random_density_hs(2, rng);
    CHECK(std::abs(d_alpha(a, b, 1.0 + 1e-4) - umegaki(a, b)) < 1e-3);
  }
}
