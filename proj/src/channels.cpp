// SPDX-License-Identifier: Apache-2.0
#include "rss/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rss/optim.hpp"

namespace rss {

namespace {

void check_kraus_shapes(int din, int dout, const std::vector<Matrix>& kraus) {
  if (din < 1 || dout < 1) throw std::invalid_argument("channel: dimensions must be >= 1");
  if (kraus.empty()) throw std::invalid_argument("channel: empty kraus list");
  for (const auto& k : kraus)
    if (k.rows() != dout || k.cols() != din)
      throw std::invalid_argument("channel: kraus operator shape mismatch");
}

}  // namespace

Channel Channel::unchecked(int dim_in, int dim_out, std::vector<Matrix> kraus,
                           std::string label) {
  check_kraus_shapes(dim_in, dim_out, kraus);
  Channel ch;
  ch.dim_in = dim_in;
  ch.dim_out = dim_out;
  ch.kraus = std::move(kraus);
  ch.label = std::move(label);
  return ch;
}

Channel Channel::make(int dim_in, int dim_out, std::vector<Matrix> kraus, std::string label) {
  Channel ch = unchecked(dim_in, dim_out, std::move(kraus), std::move(label));
  ChannelValidation v = validate(ch);
  if (!v.trace_preserving())
    throw std::invalid_argument("channel: kraus list not trace preserving within 1e-10");
  if (!v.completely_positive())
    throw std::invalid_argument("channel: Choi matrix not PSD within 1e-10");
  return ch;
}

ChannelValidation validate(const Channel& ch) {
  Matrix acc = Matrix::Zero(ch.dim_in, ch.dim_in);
  for (const auto& k : ch.kraus) acc += k.adjoint() * k;
  ChannelValidation v;
  v.tp_residual = max_abs(acc - Matrix::Identity(ch.dim_in, ch.dim_in));
  Eigen::SelfAdjointEigenSolver<Matrix> ev(choi_unnormalized(ch), Eigen::EigenvaluesOnly);
  v.min_choi_eig = ev.eigenvalues()[0];
  return v;
}

Matrix apply(const Channel& ch, const Matrix& rho) {
  if (rho.rows() != ch.dim_in || rho.cols() != ch.dim_in)
    throw std::invalid_argument("apply: state dimension mismatch");
  Matrix out = Matrix::Zero(ch.dim_out, ch.dim_out);
  for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

DensityOperator apply(const Channel& ch, const DensityOperator& rho) {
  return DensityOperator::trusted(apply(ch, rho.matrix()), {ch.dim_out});
}

DensityOperator output_state(const Channel& ch, const Matrix& rho_A) {
  if (rho_A.rows() != ch.dim_in)
    throw std::invalid_argument("output_state: input dimension mismatch");
  PureState psi = purify(DensityOperator::make(rho_A));
  const int dr = ch.dim_in, da = ch.dim_in, db = ch.dim_out;
  // psi as a dr x da coefficient matrix; (I ⊗ K)|psi> <-> X K^T.
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      psi.amplitudes.data(), dr, da);
  Matrix out = Matrix::Zero(static_cast<long>(dr) * db, static_cast<long>(dr) * db);
  Vector y(static_cast<long>(dr) * db);
  for (const auto& k : ch.kraus) {
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ym = x * k.transpose();
    Eigen::Map<const Vector> yv(ym.data(), ym.size());
    out.noalias() += yv * yv.adjoint();
  }
  return DensityOperator::trusted(std::move(out), {dr, db});
}

Matrix choi_unnormalized(const Channel& ch) {
  const int din = ch.dim_in, dout = ch.dim_out;
  Matrix j = Matrix::Zero(static_cast<long>(din) * dout, static_cast<long>(din) * dout);
  Vector v(static_cast<long>(din) * dout);
  for (const auto& k : ch.kraus) {
    for (int i = 0; i < din; ++i)
      for (int b = 0; b < dout; ++b) v[static_cast<long>(i) * dout + b] = k(b, i);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

DensityOperator choi_state(const Channel& ch) {
  Matrix j = choi_unnormalized(ch) / static_cast<double>(ch.dim_in);
  return DensityOperator::trusted(std::move(j), {ch.dim_in, ch.dim_out});
}

StinespringIsometry stinespring(const Channel& ch) {
  const int env = static_cast<int>(ch.kraus.size());
  StinespringIsometry u;
  u.dim_in = ch.dim_in;
  u.dim_out = ch.dim_out;
  u.dim_env = env;
  u.matrix = Matrix::Zero(static_cast<long>(ch.dim_out) * env, ch.dim_in);
  for (int e = 0; e < env; ++e)
    for (int b = 0; b < ch.dim_out; ++b)
      for (int a = 0; a < ch.dim_in; ++a)
        u.matrix(static_cast<long>(b) * env + e, a) = ch.kraus[e](b, a);
  return u;
}

Channel tensor(const Channel& a, const Channel& b) {
  const long din = static_cast<long>(a.dim_in) * b.dim_in;
  const long dout = static_cast<long>(a.dim_out) * b.dim_out;
  if (din > 4096 || dout > 4096)
    throw std::invalid_argument("tensor: product dimension exceeds 4096");
  std::vector<Matrix> ks;
  ks.reserve(a.kraus.size() * b.kraus.size());
  for (const auto& ka : a.kraus)
    for (const auto& kb : b.kraus) ks.push_back(kron(ka, kb));
  std::string label = a.label.empty() && b.label.empty() ? "" : a.label + "(x)" + b.label;
  return Channel::unchecked(static_cast<int>(din), static_cast<int>(dout), std::move(ks),
                            std::move(label));
}

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback, bool required = false) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (required) throw std::invalid_argument("canonical_channel: missing parameter " + key);
    return fallback;
  }
  return it->second;
}

void check_prob(double p, const std::string& name) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("canonical_channel: parameter " + name + " outside [0,1]");
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Heisenberg-Weyl unitaries X^a Z^b on dimension d.
std::vector<Matrix> heisenberg_weyl(int d) {
  std::vector<Matrix> us;
  const double tau = 2.0 * M_PI / d;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Matrix u = Matrix::Zero(d, d);
      for (int j = 0; j < d; ++j)
        u((j + a) % d, j) = std::polar(1.0, tau * b * j);
      us.push_back(u);
    }
  return us;
}

}  // namespace

Channel canonical_channel(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "identity") {
    const int d = static_cast<int>(get_param(params, "d", 2));
    if (d < 1) throw std::invalid_argument("canonical_channel: d must be >= 1");
    std::ostringstream label;
    label << "identity" << d;
    return Channel::make(d, d, {Matrix::Identity(d, d)}, label.str());
  }
  if (name == "depolarizing") {
    const int d = static_cast<int>(get_param(params, "d", 2));
    const double p = get_param(params, "p", 0.0, true);
    check_prob(p, "p");
    // rho -> (1-p) rho + p I/d via the uniform Heisenberg-Weyl twirl.
    std::vector<Matrix> ks;
    const double dd = static_cast<double>(d) * d;
    for (const auto& u : heisenberg_weyl(d)) {
      const bool id = max_abs(u - Matrix::Identity(d, d)) < 1e-15;
      const double w = id ? (1.0 - p + p / dd) : (p / dd);
      if (w > 0) ks.push_back(std::sqrt(w) * u);
    }
    std::ostringstream label;
    label << "depolarizing(" << d << ",p=" << p << ")";
    return Channel::make(d, d, std::move(ks), label.str());
  }
  if (name == "dephasing") {
    const double p = get_param(params, "p", 0.0, true);
    check_prob(p, "p");
    std::vector<Matrix> ks;
    if (p < 1.0) ks.push_back(std::sqrt(1.0 - p) * Matrix::Identity(2, 2));
    for (int i = 0; i < 2; ++i) {
      Matrix proj = Matrix::Zero(2, 2);
      proj(i, i) = 1.0;
      if (p > 0) ks.push_back(std::sqrt(p) * proj);
    }
    std::ostringstream label;
    label << "dephasing(p=" << p << ")";
    return Channel::make(2, 2, std::move(ks), label.str());
  }
  if (name == "amplitude_damping") {
    const double g = get_param(params, "gamma", 0.0, true);
    check_prob(g, "gamma");
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - g);
    k1(0, 1) = std::sqrt(g);
    std::ostringstream label;
    label << "amplitude_damping(gamma=" << g << ")";
    return Channel::make(2, 2, {k0, k1}, label.str());
  }
  if (name == "pauli") {
    const double px = get_param(params, "px", 0.0);
    const double py = get_param(params, "py", 0.0);
    const double pz = get_param(params, "pz", 0.0);
    check_prob(px, "px");
    check_prob(py, "py");
    check_prob(pz, "pz");
    const double pi = 1.0 - px - py - pz;
    if (pi < -1e-15) throw std::invalid_argument("canonical_channel: px+py+pz exceeds 1");
    std::vector<Matrix> ks;
    if (pi > 0) ks.push_back(std::sqrt(pi) * Matrix::Identity(2, 2));
    if (px > 0) ks.push_back(std::sqrt(px) * pauli_x());
    if (py > 0) ks.push_back(std::sqrt(py) * pauli_y());
    if (pz > 0) ks.push_back(std::sqrt(pz) * pauli_z());
    std::ostringstream label;
    label << "pauli(" << px << "," << py << "," << pz << ")";
    return Channel::make(2, 2, std::move(ks), label.str());
  }
  throw std::invalid_argument("canonical_channel: unknown name " + name);
}

namespace {

Matrix permutation_matrix(const std::vector<int>& perm, int d) {
  const int n = static_cast<int>(perm.size());
  long total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  Matrix w = Matrix::Zero(total, total);
  std::vector<long> stride(n);
  long acc = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[k] = acc;
    acc *= d;
  }
  for (long j = 0; j < total; ++j) {
    long rem = j, target = 0;
    for (int k = n - 1; k >= 0; --k) {
      target += (rem % d) * stride[perm[k]];
      rem /= d;
    }
    w(target, j) = 1.0;
  }
  return w;
}

}  // namespace

Channel symmetrize(const Channel& ch, int n, int dA, int dB) {
  if (n < 1 || n > 3) throw std::invalid_argument("symmetrize: n must be in 1..3");
  long din = 1, dout = 1;
  for (int k = 0; k < n; ++k) {
    din *= dA;
    dout *= dB;
  }
  if (din != ch.dim_in || dout != ch.dim_out)
    throw std::invalid_argument("symmetrize: channel dimensions are not dA^n, dB^n");
  if (n == 1) return ch;

  const auto perms = permutations(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(perms.size()));
  std::vector<Matrix> ks;
  ks.reserve(perms.size() * ch.kraus.size());
  for (const auto& pi : perms) {
    std::vector<int> inv(pi.size());
    for (size_t k = 0; k < pi.size(); ++k) inv[pi[k]] = static_cast<int>(k);
    const Matrix wa = permutation_matrix(pi, dA);
    const Matrix wb_inv = permutation_matrix(inv, dB);
    for (const auto& k : ch.kraus) ks.push_back(scale * (wb_inv * k * wa));
  }
  std::string label = ch.label.empty() ? "" : "sym(" + ch.label + ")";
  return Channel::unchecked(ch.dim_in, ch.dim_out, std::move(ks), std::move(label));
}

Channel random_channel(int dim_in, int dim_out, int kraus_rank, Rng& rng) {
  if (kraus_rank < 1) throw std::invalid_argument("random_channel: rank must be >= 1");
  if (static_cast<long>(dim_out) * kraus_rank < dim_in)
    throw std::invalid_argument("random_channel: dim_out * rank must be >= dim_in");
  Matrix v = random_isometry(dim_out * kraus_rank, dim_in, rng);
  std::vector<Matrix> ks;
  for (int e = 0; e < kraus_rank; ++e) {
    Matrix k(dim_out, dim_in);
    for (int b = 0; b < dim_out; ++b) k.row(b) = v.row(static_cast<long>(b) * kraus_rank + e);
    ks.push_back(std::move(k));
  }
  return Channel::unchecked(dim_in, dim_out, std::move(ks), "random");
}

namespace {

// id_R ⊗ ch applied to a pure |x> on R⊗A, as a dR*dB density matrix.
Matrix lifted_apply(const Channel& ch, const Vector& x, int dr) {
  const int da = ch.dim_in, db = ch.dim_out;
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> xm(
      x.data(), dr, da);
  Matrix out = Matrix::Zero(static_cast<long>(dr) * db, static_cast<long>(dr) * db);
  for (const auto& k : ch.kraus) {
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ym = xm * k.transpose();
    Eigen::Map<const Vector> yv(ym.data(), ym.size());
    out.noalias() += yv * yv.adjoint();
  }
  return out;
}

Vector params_to_state(const Eigen::VectorXd& th) {
  const int d = static_cast<int>(th.size() / 2);
  Vector x(d);
  for (int i = 0; i < d; ++i) x[i] = cxd(th[2 * i], th[2 * i + 1]);
  const double nrm = x.norm();
  if (nrm < 1e-150) {
    x = Vector::Zero(d);
    x[0] = 1.0;
    return x;
  }
  return x / nrm;
}

}  // namespace

ChannelDistanceResult channel_purified_distance(const Channel& m, const Channel& n,
                                                const SolverSettings& settings) {
  if (m.dim_in != n.dim_in || m.dim_out != n.dim_out)
    throw std::invalid_argument("channel_purified_distance: dimension mismatch");
  settings.check();
  const int dr = m.dim_in, da = m.dim_in;
  const int dim = dr * da;

  auto objective = [&](const Eigen::VectorXd& th) {
    const Vector x = params_to_state(th);
    return -purified_distance(lifted_apply(m, x, dr), lifted_apply(n, x, dr));
  };

  const int starts = 2 * settings.multistarts;
  NelderMeadOptions opt;
  opt.max_evals = std::min(settings.max_iter, 2500);
  opt.ftol = 1e-11;
  opt.step = 0.4;
  opt.restarts = 1;

  ChannelDistanceResult best;
  best.starts = starts;
  double worst = 1.0;
  for (int k = 0; k < starts; ++k) {
    Eigen::VectorXd th(2 * dim);
    if (k == 0) {
      // maximally entangled start
      th.setZero();
      for (int i = 0; i < da; ++i) th[2 * (i * da + i)] = 1.0;
    } else if (k == 1) {
      th.setZero();
      th[0] = 1.0;
    } else {
      Rng rng(settings.seed ^ static_cast<std::uint64_t>(k));
      for (int i = 0; i < th.size(); ++i) th[i] = rng.normal();
    }
    OptResult r = nelder_mead_min(objective, th, opt);
    const double val = -r.value;
    worst = std::min(worst, val);
    if (val > best.value || k == 0) {
      best.value = std::max(best.value, val);
      best.witness = params_to_state(r.x);
    }
  }
  best.restart_spread = best.value - worst;
  best.certified = false;
  return best;
}

double choi_distance(const Channel& a, const Channel& b) {
  return max_abs(choi_state(a).matrix() - choi_state(b).matrix());
}

DensityOperator apply_with_reference(const Channel& ch, const Vector& psi_ra) {
  if (psi_ra.size() % ch.dim_in != 0)
    throw std::invalid_argument("apply_with_reference: vector length not divisible by dim_in");
  const int dr = static_cast<int>(psi_ra.size()) / ch.dim_in;
  return DensityOperator::trusted(lifted_apply(ch, psi_ra, dr), {dr, ch.dim_out});
}

}  // namespace rss
