// SPDX-License-Identifier: Apache-2.0
#include "rss/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rss {

namespace {

struct SimplexState {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;
};

// One Nelder-Mead run from a given starting simplex edge.
OptResult nm_single(const std::function<double(const Eigen::VectorXd&)>& fn,
                    const Eigen::VectorXd& x0, double step, int max_evals, double ftol,
                    double xtol) {
  const int n = static_cast<int>(x0.size());
  SimplexState s;
  s.x.resize(n + 1);
  s.f.resize(n + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return fn(x);
  };
  s.x[0] = x0;
  s.f[0] = eval(x0);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    xi[i] += step;
    s.x[i + 1] = xi;
    s.f[i + 1] = eval(xi);
  }
  std::vector<int> idx(n + 1);

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  bool converged = false;
  while (evals < max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
    const int best = idx[0], worst = idx[n], second = idx[n - 1];

    double diam = 0.0;
    for (int i = 1; i <= n; ++i)
      diam = std::max(diam, (s.x[idx[i]] - s.x[best]).cwiseAbs().maxCoeff());
    if (std::abs(s.f[worst] - s.f[best]) < ftol && diam < xtol) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += s.x[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + alpha * (centroid - s.x[worst]);
    const double fr = eval(xr);
    if (fr < s.f[best]) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        s.x[worst] = xe;
        s.f[worst] = fe;
      } else {
        s.x[worst] = xr;
        s.f[worst] = fr;
      }
    } else if (fr < s.f[second]) {
      s.x[worst] = xr;
      s.f[worst] = fr;
    } else {
      const bool outside = fr < s.f[worst];
      Eigen::VectorXd xc;
      if (outside)
        xc = centroid + rho * (xr - centroid);
      else
        xc = centroid - rho * (centroid - s.x[worst]);
      const double fc = eval(xc);
      if (fc < std::min(fr, s.f[worst])) {
        s.x[worst] = xc;
        s.f[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          s.x[i] = s.x[best] + sigma * (s.x[i] - s.x[best]);
          s.f[i] = eval(s.x[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (s.f[i] < s.f[best]) best = i;
  return {s.x[best], s.f[best], evals, converged};
}

}  // namespace

OptResult nelder_mead_min(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, const NelderMeadOptions& opt) {
  OptResult best = nm_single(f, x0, opt.step, opt.max_evals, opt.ftol, opt.xtol);
  double step = opt.step;
  for (int r = 0; r < opt.restarts; ++r) {
    step *= 0.1;
    OptResult next =
        nm_single(f, best.x, step, std::max(100, opt.max_evals / 2), opt.ftol, opt.xtol);
    next.evals += best.evals;
    const double gain = best.value - next.value;
    if (next.value < best.value) best = next;
    best.evals = next.evals;
    if (gain < opt.ftol) break;
  }
  return best;
}

LineResult golden_max(const std::function<double(double)>& f, double a, double b,
                      double xtol, int max_evals) {
  LineResult out;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;
  double fa = f(a), fb = f(b);
  out.evals = 2;
  double h = b - a;
  double c = a + invphi2 * h, d = a + invphi * h;
  double fc = f(c), fd = f(d);
  out.evals += 2;
  while (h > xtol && out.evals < max_evals) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
    ++out.evals;
  }
  out.x = fc > fd ? c : d;
  out.value = std::max(fc, fd);
  if (fa > out.value) {
    out.value = fa;
    out.x = a;
  }
  if (fb > out.value) {
    out.value = fb;
    out.x = b;
  }
  return out;
}

LineResult brent_max(const std::function<double(double)>& f, double a, double b,
                     double xtol, int max_evals) {
  LineResult out;
  const double fa = f(a), fb = f(b);
  out.evals = 2;
  auto g = [&](double x) { return -f(x); };

  const double cgold = 0.3819660112501051;
  double x = a + cgold * (b - a), w = x, v = x;
  double fx = g(x);
  ++out.evals;
  double fw = fx, fv = fx;
  double lo = a, hi = b, d = 0.0, e = 0.0;
  while (out.evals < max_evals) {
    const double xm = 0.5 * (lo + hi);
    const double tol1 = xtol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (hi - lo)) break;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (lo - x) && p < q * (hi - x)) {
        parabolic = true;
        d = p / q;
        const double u = x + d;
        if (u - lo < tol2 || hi - u < tol2) d = (xm > x) ? tol1 : -tol1;
      }
    }
    if (!parabolic) {
      e = (x >= xm) ? lo - x : hi - x;
      d = cgold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0) ? tol1 : -tol1);
    const double fu = g(u);
    ++out.evals;
    if (fu <= fx) {
      if (u >= x)
        lo = x;
      else
        hi = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        lo = u;
      else
        hi = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  out.x = x;
  out.value = -fx;
  if (fa > out.value) {
    out.value = fa;
    out.x = a;
  }
  if (fb > out.value) {
    out.value = fb;
    out.x = b;
  }
  return out;
}

double solve_monotone(const std::function<double(double)>& g, double lo, double hi,
                      double tol, int max_iter) {
  double glo = g(lo), ghi = g(hi);
  int guard = 0;
  while (glo > 0 && guard++ < 200) {
    hi = lo;
    lo = lo - std::max(1.0, std::abs(lo));
    glo = g(lo);
  }
  guard = 0;
  while (ghi < 0 && guard++ < 200) {
    lo = hi;
    hi = hi + std::max(1.0, std::abs(hi));
    ghi = g(hi);
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rss
