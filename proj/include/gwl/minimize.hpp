#pragma once

// Derivative-free minimization (Nelder-Mead with optional restarts), central
// finite-difference Hessians, and just enough dense symmetric linear algebra
// for covariance matrices.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gwl {

struct MinimizeOptions {
  double x_tol = 1e-8;
  double f_tol = 1e-10;
  int max_iterations = 4000;
  int restarts = 1;
  double initial_step = 0.25;
};

struct MinimizeResult {
  std::vector<double> x;
  double fmin = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

namespace detail {

template <class F>
MinimizeResult nelder_mead_once(F& f, std::vector<double> x0, double step,
                                const MinimizeOptions& opt) {
  const std::size_t n = x0.size();
  MinimizeResult res;

  auto safe_eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = step * std::max(std::abs(x0[i]), 1.0);
    simplex[i + 1][i] += h;
  }
  for (std::size_t i = 0; i <= n; ++i) fv[i] = safe_eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    res.iterations = iter + 1;
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });

    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diameter = std::max(diameter, std::abs(simplex[order[i]][j] - simplex[best][j]));
    const double spread = fv[worst] - fv[best];
    if (diameter < opt.x_tol && spread < opt.f_tol * (1.0 + std::abs(fv[best]))) {
      res.converged = true;
      break;
    }

    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        if (i != worst) s += simplex[i][j];
      centroid[j] = s / static_cast<double>(n);
    }

    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
    const double fr = safe_eval(xr);

    if (fr < fv[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - simplex[worst][j]);
      const double fe = safe_eval(xe);
      if (fe < fr) {
        simplex[worst] = xe; fv[worst] = fe;
      } else {
        simplex[worst] = xr; fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr; fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      if (outside) {
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (xr[j] - centroid[j]);
      } else {
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (simplex[worst][j] - centroid[j]);
      }
      const double fcv = safe_eval(xc);
      if (fcv < (outside ? fr : fv[worst])) {
        simplex[worst] = xc; fv[worst] = fcv;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fv[i] = safe_eval(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = simplex[best];
  res.fmin = fv[best];
  return res;
}

}  // namespace detail

// Nelder-Mead descent from x0; `restarts` extra runs from the incumbent with
// a smaller initial simplex guard against premature collapse.
template <class F>
MinimizeResult minimize(F&& f, std::vector<double> x0, MinimizeOptions opt = {}) {
  if (x0.empty()) throw std::invalid_argument("minimize: empty start point");
  MinimizeResult best = detail::nelder_mead_once(f, x0, opt.initial_step, opt);
  for (int r = 0; r < opt.restarts; ++r) {
    const double step = opt.initial_step * std::pow(0.2, r + 1);
    MinimizeResult next = detail::nelder_mead_once(f, best.x, step, opt);
    next.evaluations += best.evaluations;
    next.iterations += best.iterations;
    if (next.fmin <= best.fmin) {
      next.converged = next.converged || best.converged;
      best = std::move(next);
    } else {
      best.evaluations = next.evaluations;
      best.iterations = next.iterations;
    }
  }
  return best;
}

// Symmetric k x k matrix in dense row-major storage.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Cholesky-based inverse; empty when the matrix is not positive definite.
  std::optional<SymMatrix> inverse_spd() const {
    const std::size_t n = n_;
    std::vector<double> L(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = a_[i * n + j];
        for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
        if (i == j) {
          if (!(s > 0.0) || !std::isfinite(s)) return std::nullopt;
          L[i * n + i] = std::sqrt(s);
        } else {
          L[i * n + j] = s / L[j * n + j];
        }
      }
    }
    // invert L in place, then assemble (L^-1)^T L^-1
    for (std::size_t i = 0; i < n; ++i) {
      L[i * n + i] = 1.0 / L[i * n + i];
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = i; k < j; ++k) s -= L[j * n + k] * L[k * n + i];
        L[j * n + i] = s / L[j * n + j];
      }
    }
    SymMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t k = i; k < n; ++k) s += L[k * n + i] * L[k * n + j];
        inv(i, j) = s;
        inv(j, i) = s;
      }
    return inv;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Central-difference Hessian with per-coordinate steps h_i = step*max(|x_i|,1).
template <class F>
SymMatrix numeric_hessian(F&& f, const std::vector<double>& x, double step = 1e-4) {
  const std::size_t n = x.size();
  SymMatrix h(n);
  std::vector<double> hs(n);
  for (std::size_t i = 0; i < n; ++i) hs[i] = step * std::max(std::abs(x[i]), 1.0);

  const double f0 = f(x);
  std::vector<double> xp = x;
  for (std::size_t i = 0; i < n; ++i) {
    xp = x;
    xp[i] = x[i] + hs[i];
    const double fpp = f(xp);
    xp[i] = x[i] - hs[i];
    const double fmm = f(xp);
    h(i, i) = (fpp - 2.0 * f0 + fmm) / (hs[i] * hs[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      xp = x;
      xp[i] = x[i] + hs[i]; xp[j] = x[j] + hs[j];
      const double fpp = f(xp);
      xp[j] = x[j] - hs[j];
      const double fpm = f(xp);
      xp[i] = x[i] - hs[i]; xp[j] = x[j] + hs[j];
      const double fmp = f(xp);
      xp[j] = x[j] - hs[j];
      const double fmm = f(xp);
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * hs[i] * hs[j]);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

}  // namespace gwl
