// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_RANDOM_HPP
#define RSS_RANDOM_HPP

#include <cstdint>
#include <random>

#include "rss/linalg.hpp"

namespace rss {

// Seeded generator for all stochastic pieces (multi-start points, test
// instance families, sampling oracles). Every consumer derives its own
// stream so results are independent of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }
  cxd cnormal() { return {normal_(gen_), normal_(gen_)}; }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// splitmix64-style mixing for deriving independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

Vector random_pure(int dim, Rng& rng);             // Haar on the sphere
Matrix random_ginibre(int rows, int cols, Rng& rng);
Matrix random_density_hs(int dim, Rng& rng);       // Hilbert-Schmidt measure
Matrix random_hermitian(int dim, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);          // Haar via phase-fixed QR
Matrix random_isometry(int rows, int cols, Rng& rng);

}  // namespace rss

#endif
