// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "rss/channels.hpp"
#include "rss/linalg.hpp"
#include "rss/mutinfo.hpp"
#include "rss/mutinfo_inner.hpp"
#include "rss/optim.hpp"
#include "rss/random.hpp"
#include "rss/renyi.hpp"

using namespace rss;

namespace {

SolverSettings test_settings() {
  SolverSettings s;
  s.seed = 2024;
  return s;
}

DensityOperator mes2() {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return DensityOperator::trusted(v * v.adjoint(), {2, 2});
}

DensityOperator classically_correlated() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  return DensityOperator::trusted(m, {2, 2});
}

Matrix pauli(int k) {
  Matrix m(2, 2);
  if (k == 1)
    m << 0, 1, 1, 0;
  else if (k == 2)
    m << 0, cxd(0, -1), cxd(0, 1), 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

// Independent oracle: exhaustive Bloch-ball grid over qubit sigma plus a
// simplex polish in Bloch coordinates. Shares nothing with the inner solver
// except d_alpha itself.
double bloch_grid_oracle(const DensityOperator& rho, double alpha, int grid) {
  Matrix rho_r = partial_trace(rho.matrix(), rho.dims(), {0});
  auto dval = [&](double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    if (r2 > 1.0) return std::numeric_limits<double>::infinity();
    Matrix sigma =
        0.5 * (Matrix::Identity(2, 2) + x * pauli(1) + y * pauli(2) + z * pauli(3));
    return d_alpha(rho.matrix(), kron(rho_r, sigma), alpha);
  };
  double best = std::numeric_limits<double>::infinity();
  double bx = 0, by = 0, bz = 0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        const double x = -1.0 + 2.0 * i / (grid - 1);
        const double y = -1.0 + 2.0 * j / (grid - 1);
        const double z = -1.0 + 2.0 * k / (grid - 1);
        const double v = dval(x, y, z);
        if (v < best) {
          best = v;
          bx = x, by = y, bz = z;
        }
      }
  Eigen::VectorXd x0(3);
  x0 << bx, by, bz;
  NelderMeadOptions opt;
  opt.max_evals = 4000;
  opt.ftol = 1e-13;
  opt.step = 2.0 / (grid - 1);
  opt.restarts = 2;
  OptResult r = nelder_mead_min(
      [&](const Eigen::VectorXd& v) { return dval(v[0], v[1], v[2]); }, x0, opt);
  return std::min(best, r.value);
}

}  // namespace

TEST_CASE("inner gradient matches finite differences") {
  Rng rng(101);
  for (double alpha : {1.3, 2.0, 8.0}) {
    Matrix rho = random_density_hs(4, rng);
    inner::Problem prob(rho, 2, 2, alpha);
    Matrix sigma = random_density_hs(2, rng);
    sigma = 0.7 * sigma + 0.3 * Matrix::Identity(2, 2) / 2.0;
    Matrix grad;
    prob.objective_grad(sigma, &grad);
    Rng rng2(55);
    Matrix h = random_hermitian(2, rng2);
    const double eps = 1e-6;
    const double fd =
        (prob.objective(sigma + eps * h) - prob.objective(sigma - eps * h)) / (2 * eps);
    const double an = std::real((grad * h).trace());
    CHECK(std::abs(fd - an) < 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("fast and reference inner paths agree") {
  Rng rng(103);
  SolverSettings s = test_settings();
  for (int t = 0; t < 6; ++t) {
    const double alpha = (t % 3 == 0) ? 1.2 : (t % 3 == 1 ? 1.5 : 2.0);
    Matrix rho = random_density_hs(4, rng);
    inner::Problem prob(rho, 2, 2, alpha);
    inner::Result ref = inner::solve_reference(prob, s);
    inner::Result fast = inner::solve_fast(prob, s, nullptr);
    CHECK(std::abs(ref.value - fast.value) < s.inner_tol);
  }
}

TEST_CASE("state_mi_alpha anchors") {
  SolverSettings s = test_settings();
  Rng rng(107);

  // Product state: zero with minimizer rho_B.
  Matrix a = random_density_hs(2, rng), b = random_density_hs(2, rng);
  DensityOperator prod = DensityOperator::trusted(kron(a, b), {2, 2});
  MutualInfoResult rp = state_mi_alpha(prod, 1.5, s);
  CHECK(rp.value < 1e-9);
  CHECK(max_abs(rp.minimizer_sigma - b) < 1e-3);

  // Maximally entangled pair: 2 bits for every alpha in (1, 2].
  for (double alpha : {1.1, 1.5, 2.0}) {
    MutualInfoResult r = state_mi_alpha(mes2(), alpha, s);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(max_abs(r.minimizer_sigma - 0.5 * Matrix::Identity(2, 2)) < 1e-4);
    CHECK(r.converged);
  }

  // Classically correlated: 1 bit, classical reduction.
  MutualInfoResult rc = state_mi_alpha(classically_correlated(), 1.5, s);
  CHECK(rc.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("state_mi_alpha matches the Bloch-grid oracle") {
  SolverSettings s = test_settings();
  Rng rng(109);
  for (int t = 0; t < 3; ++t) {
    Matrix rho = random_density_hs(4, rng);
    DensityOperator state = DensityOperator::trusted(rho, {2, 2});
    for (double alpha : {1.1, 2.0}) {
      const double oracle = bloch_grid_oracle(state, alpha, 15);
      const double got = state_mi_alpha(state, alpha, s).value;
      CHECK(std::abs(got - oracle) < 1e-6);
    }
  }
}

TEST_CASE("state_mi_vn and max_information anchors") {
  SolverSettings s = test_settings();
  CHECK(state_mi_vn(mes2()) == doctest::Approx(2.0));
  CHECK(state_mi_vn(classically_correlated()) == doctest::Approx(1.0));
  CHECK(max_information(mes2(), s) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(max_information(classically_correlated(), s) == doctest::Approx(1.0).epsilon(1e-7));
  Rng rng(113);
  Matrix a = random_density_hs(2, rng), b = random_density_hs(2, rng);
  CHECK(max_information(DensityOperator::trusted(kron(a, b), {2, 2}), s) < 1e-7);
}

TEST_CASE("channel_mi_alpha closed-form anchors") {
  SolverSettings s = test_settings();
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  const auto t0 = std::chrono::steady_clock::now();
  for (double alpha : {1.2, 2.0}) {
    MutualInfoResult r = channel_mi_alpha(id2, alpha, s);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.converged);
  }
  const auto t1 = std::chrono::steady_clock::now();
  MESSAGE("identity channel mi_alpha x2: "
          << std::chrono::duration<double>(t1 - t0).count() << " s");

  Channel dep1 = canonical_channel("depolarizing", {{"d", 2}, {"p", 1.0}});
  CHECK(channel_mi_alpha(dep1, 1.5, s).value < 1e-8);

  Channel deph1 = canonical_channel("dephasing", {{"p", 1.0}});
  MutualInfoResult rd = channel_mi_alpha(deph1, 1.5, s);
  CHECK(rd.value == doctest::Approx(1.0).epsilon(1e-8));
  const auto t2 = std::chrono::steady_clock::now();
  MESSAGE("dephasing+depolarizing mi_alpha: "
          << std::chrono::duration<double>(t2 - t1).count() << " s");
}

TEST_CASE("channel_mi_alpha fixed-input concavity probe") {
  SolverSettings s = test_settings();
  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.4}});
  Rng rng(127);
  Matrix r1 = random_density_hs(2, rng), r2 = random_density_hs(2, rng);
  const double lam = 0.37;
  const double v1 = channel_mi_alpha_fixed_input(ad, r1, 1.5, s).value;
  const double v2 = channel_mi_alpha_fixed_input(ad, r2, 1.5, s).value;
  const double vm =
      channel_mi_alpha_fixed_input(ad, (lam * r1 + (1 - lam) * r2).eval(), 1.5, s).value;
  CHECK(vm >= lam * v1 + (1 - lam) * v2 - 1e-6);
}

TEST_CASE("channel_mi_vn anchors and diagonal-scan oracle") {
  SolverSettings s = test_settings();
  CHECK(channel_mi_vn(canonical_channel("identity", {{"d", 2}}), s).value ==
        doctest::Approx(2.0).epsilon(1e-7));
  CHECK(channel_mi_vn(canonical_channel("depolarizing", {{"d", 2}, {"p", 1.0}}), s).value <
        1e-9);

  // Covariance restricts the optimum to diagonal inputs: 1-D scan oracle.
  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.5}});
  const auto t0 = std::chrono::steady_clock::now();
  MutualInfoResult r = channel_mi_vn(ad, s);
  const auto t1 = std::chrono::steady_clock::now();
  MESSAGE("channel_mi_vn(ad): " << std::chrono::duration<double>(t1 - t0).count() << " s");
  double best = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i * 1e-4;
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = x;
    rho(1, 1) = 1.0 - x;
    best = std::max(best, state_mi_vn(output_state(ad, rho)));
  }
  CHECK(std::abs(r.value - best) < 1e-4);
}

TEST_CASE("channel_mi_max ladder") {
  SolverSettings s = test_settings();
  const auto t0 = std::chrono::steady_clock::now();
  MutualInfoResult r = channel_mi_max(canonical_channel("identity", {{"d", 2}}), s);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.converged);
  CHECK(channel_mi_max(canonical_channel("depolarizing", {{"d", 2}, {"p", 1.0}}), s).value <
        1e-8);
  MutualInfoResult rd = channel_mi_max(canonical_channel("dephasing", {{"p", 1.0}}), s);
  CHECK(rd.value == doctest::Approx(1.0).epsilon(1e-6));
  const auto t1 = std::chrono::steady_clock::now();
  MESSAGE("three mi_max ladders: " << std::chrono::duration<double>(t1 - t0).count() << " s");
}

TEST_CASE("tensor-product additivity quick probe") {
  SolverSettings s = test_settings();
  Channel dep = canonical_channel("depolarizing", {{"d", 2}, {"p", 0.3}});
  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.4}});
  const auto t0 = std::chrono::steady_clock::now();
  const double v1 = channel_mi_alpha(dep, 1.5, s).value;
  const double v2 = channel_mi_alpha(ad, 1.5, s).value;
  SolverSettings s16 = s;
  s16.multistarts = 16;
  const double v12 = channel_mi_alpha(tensor(dep, ad), 1.5, s16).value;
  const auto t1 = std::chrono::steady_clock::now();
  MESSAGE("tensor additivity probe: " << std::chrono::duration<double>(t1 - t0).count()
                                      << " s (tensor solve dominates)");
  CHECK(std::abs(v12 - v1 - v2) < 1e-4);
}
