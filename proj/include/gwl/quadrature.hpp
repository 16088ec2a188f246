#pragma once

// Globally adaptive Gauss-Kronrod 7-15 quadrature with a worst-segment-first
// refinement queue, plus a semi-infinite wrapper using the rational map
// y = a + u/(1-u).

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace gwl {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = std::numeric_limits<double>::infinity();
  bool converged = false;
  int subdivisions = 0;
};

namespace detail {

// 15-point Kronrod abscissae (nonnegative half) and weights, with the
// embedded 7-point Gauss weights on the odd-index nodes.
inline constexpr double kGk15Nodes[7] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Non-finite integrand values (endpoint singularities sampled by roundoff,
// underflow-driven NaNs deep in a tail) contribute zero rather than
// poisoning the whole panel.
inline double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& value, double& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = finite_or_zero(f(center));
  double result_kronrod = kGk15WeightsK[7] * fc;
  double result_gauss = kGk15WeightsG[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGk15Nodes[j];
    const double f1 = finite_or_zero(f(center - dx));
    const double f2 = finite_or_zero(f(center + dx));
    result_kronrod += kGk15WeightsK[j] * (f1 + f2);
    if (j & 1) result_gauss += kGk15WeightsG[(j - 1) / 2] * (f1 + f2);
  }
  value = result_kronrod * half;
  error = std::abs((result_kronrod - result_gauss) * half);
}

struct QuadSegment {
  double a, b, value, error;
  bool operator<(const QuadSegment& o) const { return error < o.error; }
};

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, QuadratureSpec spec = {}) {
  QuadratureResult out;
  if (!(a < b)) {
    out.converged = (a == b);
    out.error_estimate = 0.0;
    return out;
  }

  std::priority_queue<detail::QuadSegment> queue;
  detail::QuadSegment seg{a, b, 0.0, 0.0};
  detail::gk15_panel(f, a, b, seg.value, seg.error);
  double total = seg.value;
  double total_error = seg.error;
  queue.push(seg);

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  int splits = 0;
  while (total_error > tolerance() && splits < spec.max_subdivisions) {
    const detail::QuadSegment worst = queue.top();
    const double width = worst.b - worst.a;
    const double scale = std::max({1.0, std::abs(worst.a), std::abs(worst.b)});
    if (width <= scale * 4.0 * std::numeric_limits<double>::epsilon()) break;
    queue.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    detail::QuadSegment left{worst.a, mid, 0.0, 0.0};
    detail::QuadSegment right{mid, worst.b, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.error);
    detail::gk15_panel(f, right.a, right.b, right.value, right.error);

    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  out.value = total;
  out.error_estimate = total_error;
  out.converged = total_error <= tolerance();
  out.subdivisions = splits;
  return out;
}

// Integral of f over [a, infinity) through the substitution y = a + u/(1-u),
// dy = du/(1-u)^2, which maps u in (0,1) onto the whole tail.
template <class F>
QuadratureResult integrate_to_inf(F&& f, double a, QuadratureSpec spec = {}) {
  auto g = [&f, a](double u) {
    const double om = 1.0 - u;
    const double y = a + u / om;
    const double jac = 1.0 / (om * om);
    return f(y) * jac;
  };
  return integrate(g, 0.0, 1.0, spec);
}

}  // namespace gwl
