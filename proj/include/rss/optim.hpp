// SPDX-License-Identifier: Apache-2.0
#ifndef RSS_OPTIM_HPP
#define RSS_OPTIM_HPP

#include <functional>

#include <Eigen/Dense>

namespace rss {

struct NelderMeadOptions {
  int max_evals = 6000;
  double ftol = 1e-12;   // spread of simplex values
  double xtol = 1e-10;   // simplex diameter
  double step = 0.4;     // initial simplex edge
  int restarts = 2;      // shrink-restarts at the incumbent
};

struct OptResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

// Derivative-free simplex minimization (Nelder-Mead with adaptive restarts).
OptResult nelder_mead_min(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, const NelderMeadOptions& opt);

struct LineResult {
  double x = 0.0;
  double value = 0.0;
  int evals = 0;
};

// Golden-section maximization of a unimodal (concave) function on [a, b].
// Endpoints are evaluated and included in the result.
LineResult golden_max(const std::function<double(double)>& f, double a, double b,
                      double xtol, int max_evals = 200);

// Brent-style maximization (golden section with parabolic interpolation) of a
// smooth concave function on [a, b]; far fewer evaluations than golden_max
// when each evaluation is expensive. Endpoints included.
LineResult brent_max(const std::function<double(double)>& f, double a, double b,
                     double xtol, int max_evals = 120);

inline LineResult golden_min(const std::function<double(double)>& f, double a, double b,
                             double xtol, int max_evals = 200) {
  LineResult r = golden_max([&](double x) { return -f(x); }, a, b, xtol, max_evals);
  r.value = -r.value;
  return r;
}

// Bisection solve of a monotone increasing scalar equation g(c) = 0 on a
// bracket that is expanded as needed.
double solve_monotone(const std::function<double(double)>& g, double lo, double hi,
                      double tol = 1e-13, int max_iter = 200);

}  // namespace rss

#endif
