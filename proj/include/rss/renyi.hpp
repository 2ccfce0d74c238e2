// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_RENYI_HPP
#define RSS_RENYI_HPP

#include "rss/linalg.hpp"

namespace rss {

// All divergences and entropies are in bits (log base 2).

// Q_alpha(x||y) = tr (y^((1-a)/2a) x y^((1-a)/2a))^a for PSD x, y. The kernel
// of y is handled by pseudo-powers on its support. For alpha > 1, mass of x
// outside supp(y) beyond kSupportTol yields +infinity (no exception).
double q_alpha(const Matrix& x, const Matrix& y, double alpha);

// log2 of q_alpha, evaluated stably for large alpha.
double log2_q_alpha(const Matrix& x, const Matrix& y, double alpha);

// Sandwiched Renyi divergence, bits. alpha = 1 routes to umegaki.
double d_alpha(const Matrix& rho, const Matrix& sigma, double alpha);

// Max-relative entropy: log2 of the largest eigenvalue of
// sigma^(-1/2) rho sigma^(-1/2) on supp(sigma); +inf on support violation.
double d_max(const Matrix& rho, const Matrix& sigma);

// Umegaki relative entropy tr rho (log2 rho - log2 sigma); +inf on support
// violation.
double umegaki(const Matrix& rho, const Matrix& sigma);

// von Neumann entropy, bits, with 0 log 0 = 0.
double von_neumann(const Matrix& rho);

}  // namespace rss

#endif
