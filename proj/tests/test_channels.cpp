// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rss/channels.hpp"
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

Matrix basis_state(int i) { return diag2(i == 0 ? 1 : 0, i == 0 ? 0 : 1); }

SolverSettings fast_settings() {
  SolverSettings s;
  s.seed = 99;
  s.multistarts = 4;  // channel distance uses 2x this
  return s;
}

}  // namespace

TEST_CASE("validate reports residuals") {
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  ChannelValidation v = validate(id2);
  CHECK(v.tp_residual == 0.0);
  CHECK(v.min_choi_eig >= -1e-12);

  // Deliberate defect: sum K†K = I/2.
  Channel broken = Channel::unchecked(2, 2, {Matrix::Identity(2, 2) / std::sqrt(2.0)});
  ChannelValidation bv = validate(broken);
  CHECK(bv.tp_residual == doctest::Approx(0.5));
  CHECK_FALSE(bv.trace_preserving());

  Rng rng(61);
  Channel rnd = random_channel(3, 2, 4, rng);
  ChannelValidation rv = validate(rnd);
  CHECK(rv.tp_residual < 1e-10);
  CHECK(rv.min_choi_eig > -1e-10);
}

TEST_CASE("apply on canonical channels") {
  Rng rng(67);
  Matrix rho = random_density_hs(2, rng);
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  CHECK(max_abs(rss::apply(id2, rho) - rho) < 1e-14);

  Channel dep1 = canonical_channel("depolarizing", {{"d", 2}, {"p", 1.0}});
  CHECK(max_abs(rss::apply(dep1, basis_state(0)) - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.3}});
  CHECK(max_abs(rss::apply(ad, basis_state(1)) - diag2(0.3, 0.7)) < 1e-12);

  // Trace preservation on random states.
  Channel rnd = random_channel(3, 3, 2, rng);
  Matrix rho3 = random_density_hs(3, rng);
  CHECK(std::abs(rss::apply(rnd, rho3).trace().real() - 1.0) < 1e-12);
}

TEST_CASE("output_state cases") {
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  DensityOperator mes = output_state(id2, 0.5 * Matrix::Identity(2, 2));
  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(mes.matrix() - bell * bell.adjoint()) < 1e-12);

  Rng rng(71);
  Matrix rho = random_density_hs(2, rng);
  Channel dep1 = canonical_channel("depolarizing", {{"d", 2}, {"p", 1.0}});
  DensityOperator prod = output_state(dep1, rho);
  Matrix r = partial_trace(prod.matrix(), prod.dims(), {0});
  CHECK(max_abs(prod.matrix() - kron(r, 0.5 * Matrix::Identity(2, 2))) < 1e-12);

  Channel deph = canonical_channel("dephasing", {{"p", 1.0}});
  DensityOperator cc = output_state(deph, 0.5 * Matrix::Identity(2, 2));
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs(cc.matrix() - expect) < 1e-12);

  // Tr_B recovers the purification marginal.
  DensityOperator out = output_state(canonical_channel("amplitude_damping", {{"gamma", 0.4}}), rho);
  Matrix phi_r = partial_trace(out.matrix(), out.dims(), {0});
  EighResult re = eigh(rho);
  Matrix expect_r = Matrix::Zero(2, 2);
  // eigenbasis purification: marginal on R is diagonal with the support
  // eigenvalues in ascending order
  int slot = 0;
  for (int i = 0; i < 2; ++i)
    if (re.eigenvalues[i] > 1e-13) expect_r(slot, slot) = re.eigenvalues[i], ++slot;
  CHECK(max_abs(phi_r - expect_r) < 1e-10);
}

TEST_CASE("choi, stinespring, tensor") {
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(choi_state(id2).matrix() - bell * bell.adjoint()) < 1e-14);

  CHECK(choi_distance(tensor(id2, id2), canonical_channel("identity", {{"d", 4}})) < 1e-14);

  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.3}});
  StinespringIsometry u = stinespring(ad);
  CHECK(max_abs(u.matrix.adjoint() * u.matrix - Matrix::Identity(2, 2)) < 1e-12);
  Rng rng(73);
  Matrix rho = random_density_hs(2, rng);
  Matrix lifted = u.matrix * rho * u.matrix.adjoint();
  // rows are indexed (b, e) with e minor: tracing the environment keeps b.
  Matrix traced = partial_trace(lifted, {2, u.dim_env}, {0});
  CHECK(max_abs(traced - rss::apply(ad, rho)) < 1e-10);
}

TEST_CASE("canonical parameter validation") {
  CHECK(choi_distance(canonical_channel("depolarizing", {{"d", 2}, {"p", 0.0}}),
                      canonical_channel("identity", {{"d", 2}})) < 1e-12);
  Channel deph = canonical_channel("dephasing", {{"p", 1.0}});
  REQUIRE(deph.kraus.size() == 2);
  CHECK(max_abs(deph.kraus[0] - diag2(1, 0)) < 1e-15);
  CHECK(max_abs(deph.kraus[1] - diag2(0, 1)) < 1e-15);
  CHECK_THROWS_AS(canonical_channel("depolarizing", {{"d", 2}, {"p", 1.2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_channel("pauli", {{"px", 0.7}, {"py", 0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(canonical_channel("nosuch", {}), std::invalid_argument);
}

TEST_CASE("symmetrize") {
  Channel deph = canonical_channel("dephasing", {{"p", 0.5}});
  Channel sq = tensor(deph, deph);
  Channel sym = symmetrize(sq, 2, 2, 2);
  CHECK(choi_distance(sym, sq) < 1e-12);  // already symmetric

  CHECK(choi_distance(symmetrize(deph, 1, 2, 2), deph) == 0.0);

  // Asymmetric channel: symmetrized Choi must be invariant under the
  // simultaneous swap of input and output pairs.
  Channel ad = canonical_channel("amplitude_damping", {{"gamma", 0.6}});
  Channel asym = tensor(deph, ad);
  Channel sym2 = symmetrize(asym, 2, 2, 2);
  DensityOperator j = choi_state(sym2);
  // Choi subsystems: (A1 A2 B1 B2) after registering the split.
  Matrix jm = j.matrix();
  Matrix swapped = permute_subsystems(jm, {2, 2, 2, 2}, {1, 0, 3, 2});
  CHECK(max_abs(swapped - jm) < 1e-10);

  // Explicit two-permutation average oracle on the Choi matrix.
  Matrix avg = 0.5 * (choi_state(asym).matrix() +
                      permute_subsystems(choi_state(asym).matrix(), {2, 2, 2, 2}, {1, 0, 3, 2}));
  CHECK(max_abs(jm - avg) < 1e-10);

  // Idempotence.
  CHECK(choi_distance(symmetrize(sym2, 2, 2, 2), sym2) < 1e-10);
}

TEST_CASE("channel purified distance") {
  SolverSettings s = fast_settings();
  Channel id2 = canonical_channel("identity", {{"d", 2}});
  CHECK(channel_purified_distance(id2, id2, s).value < 1e-6);

  std::vector<Matrix> xk = {Matrix::Zero(2, 2)};
  xk[0] << 0, 1, 1, 0;
  Channel xch = Channel::make(2, 2, xk, "unitary-x");
  ChannelDistanceResult rx = channel_purified_distance(id2, xch, s);
  CHECK(rx.value == doctest::Approx(1.0).epsilon(1e-8));

  Channel deph = canonical_channel("dephasing", {{"p", 1.0}});
  ChannelDistanceResult rd = channel_purified_distance(id2, deph, s);
  CHECK(rd.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK_FALSE(rd.certified);

  // Lower-bound consistency at a fixed probe input.
  Rng rng(79);
  Channel a = random_channel(2, 2, 2, rng), b = random_channel(2, 2, 2, rng);
  ChannelDistanceResult est = channel_purified_distance(a, b, s);
  for (int t = 0; t < 5; ++t) {
    Vector probe = random_pure(4, rng);
    const double p = purified_distance(apply_with_reference(a, probe).matrix(),
                                       apply_with_reference(b, probe).matrix());
    CHECK(est.value >= p - 1e-6);
  }
}
