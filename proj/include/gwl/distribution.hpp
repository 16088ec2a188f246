#pragma once

// The generalized weighted Lindley (GWL) distribution: density, distribution
// and survival functions, hazard analysis, quantiles, moments, entropies,
// mean residual life, Lorenz curve, and exact mixture sampling.
//
// Parameterization: shape phi > 0, rate lambda > 0, power alpha > 0.
// With x = (lambda*t)^alpha the density is
//
//   f(t) = alpha lambda^(alpha phi) t^(alpha phi - 1) (lambda + x) e^(-x)
//          / ((lambda + phi) Gamma(phi)),
//
// which is the two-component gamma mixture: W = (lambda*T)^alpha is
// gamma(phi,1) with probability lambda/(lambda+phi) and gamma(phi+1,1)
// otherwise. That identity drives both the closed-form moments and the
// sampler. alpha = 1 recovers the weighted Lindley distribution and
// phi = alpha = 1 the classical Lindley distribution.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwl/quadrature.hpp"
#include "gwl/rng.hpp"
#include "gwl/rootfind.hpp"
#include "gwl/special.hpp"

namespace gwl {

struct GwlParams {
  double phi = 1.0;
  double lambda = 1.0;
  double alpha = 1.0;

  void validate() const {
    if (!(phi > 0.0) || !std::isfinite(phi) ||
        !(lambda > 0.0) || !std::isfinite(lambda) ||
        !(alpha > 0.0) || !std::isfinite(alpha))
      throw std::domain_error("GwlParams: phi, lambda, alpha must be positive and finite");
  }
};

namespace detail {

// Shared per-point quantities. log_x = alpha*log(lambda*t) stays representable
// even when x itself overflows, so every formula downstream branches on
// log_x rather than x.
struct GwlPoint {
  double log_lt;  // log(lambda*t)
  double log_x;   // alpha*log(lambda*t)
  double x;       // exp(log_x), may be +inf
};

inline GwlPoint gwl_point(const GwlParams& p, double t) {
  const double log_lt = std::log(p.lambda) + std::log(t);
  const double log_x = p.alpha * log_lt;
  return {log_lt, log_x, std::exp(log_x)};
}

inline double log_norm_const(const GwlParams& p) {
  return std::log(p.lambda + p.phi) + std::lgamma(p.phi);
}

// integral_0^inf y^(c-1) g(y) dy for smooth g. The substitution y = s^(1/c)
// on [0,1] absorbs the endpoint singularity exactly (y^(c-1) dy = ds / c),
// which plain Gauss-Kronrod panels cannot resolve for c < 1.
template <class G>
inline double power_weighted_integral(double c, G&& g, QuadratureSpec spec,
                                      const char* what) {
  const QuadratureResult head = integrate(
      [&](double s) { return g(std::pow(s, 1.0 / c)); }, 0.0, 1.0, spec);
  const QuadratureResult tail = integrate_to_inf(
      [&](double y) { return std::exp((c - 1.0) * std::log(y)) * g(y); }, 1.0,
      spec);
  if (!head.converged || !tail.converged)
    throw std::runtime_error(std::string(what) + ": quadrature did not converge");
  return head.value / c + tail.value;
}

}  // namespace detail

inline double log_pdf(const GwlParams& p, double t) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("log_pdf: t must be positive");
  const auto pt = detail::gwl_point(p, t);
  return std::log(p.alpha) + p.alpha * p.phi * std::log(p.lambda) +
         (p.alpha * p.phi - 1.0) * std::log(t) +
         log_add_exp(std::log(p.lambda), pt.log_x) - pt.x -
         detail::log_norm_const(p);
}

inline double pdf(const GwlParams& p, double t) { return std::exp(log_pdf(p, t)); }

// Limit of the density at the origin: the t^(alpha*phi - 1) factor decides.
inline double pdf_limit_at_zero(const GwlParams& p) {
  p.validate();
  const double ap = p.alpha * p.phi;
  if (ap < 1.0) return std::numeric_limits<double>::infinity();
  if (ap > 1.0) return 0.0;
  return p.alpha * p.lambda * p.lambda / ((p.lambda + p.phi) * std::tgamma(p.phi));
}

// F(t) = P(phi, x) - x^phi e^(-x) / ((lambda+phi) Gamma(phi)), x = (lambda t)^alpha.
inline double cdf(const GwlParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("cdf: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const auto pt = detail::gwl_point(p, t);
  if (std::isinf(pt.x)) return 1.0;
  const double corr = std::exp(p.phi * pt.log_x - pt.x - std::lgamma(p.phi) -
                               std::log(p.lambda + p.phi));
  const double v = reg_lower_gamma(p.phi, pt.x) - corr;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

// log S(t), stable arbitrarily deep into the right tail:
// S(t) = Q(phi, x) + x^phi e^(-x) / ((lambda+phi) Gamma(phi)).
inline double log_survival(const GwlParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("log_survival: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const auto pt = detail::gwl_point(p, t);
  if (std::isinf(pt.x)) return -std::numeric_limits<double>::infinity();
  const double a = log_reg_upper_gamma(p.phi, pt.x);
  const double b = p.phi * pt.log_x - pt.x - detail::log_norm_const(p);
  return log_add_exp(a, b);
}

inline double survival(const GwlParams& p, double t) { return std::exp(log_survival(p, t)); }

// h(t) = f(t)/S(t) through the log forms; once x = (lambda t)^alpha exceeds
// the overflow range the exact ratio collapses to the leading asymptote
// alpha*lambda*(lambda t)^(alpha-1), correct there to machine precision.
inline double hazard(const GwlParams& p, double t) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("hazard: t must be positive");
  const auto pt = detail::gwl_point(p, t);
  if (pt.log_x > 700.0)
    return std::exp(std::log(p.alpha) + std::log(p.lambda) + (p.alpha - 1.0) * pt.log_lt);
  return std::exp(log_pdf(p, t) - log_survival(p, t));
}

inline double hazard_limit_at_zero(const GwlParams& p) { return pdf_limit_at_zero(p); }

// h(infinity) is governed by alpha alone: h(t) ~ alpha*lambda*(lambda t)^(alpha-1).
inline double hazard_limit_at_inf(const GwlParams& p) {
  p.validate();
  if (p.alpha < 1.0) return 0.0;
  if (p.alpha > 1.0) return std::numeric_limits<double>::infinity();
  return p.lambda;
}

// E[T^r] = (r/alpha + phi + lambda) Gamma(r/alpha + phi)
//          / ((lambda + phi) lambda^r Gamma(phi)),  valid for r > -alpha*phi.
inline double raw_moment(const GwlParams& p, double r) {
  p.validate();
  if (!(r > -p.alpha * p.phi))
    throw std::domain_error("raw_moment: order must exceed -alpha*phi");
  if (r == 0.0) return 1.0;
  const double s = r / p.alpha + p.phi;
  return std::exp(std::lgamma(s) - std::lgamma(p.phi) - r * std::log(p.lambda) +
                  std::log(s + p.lambda) - std::log(p.lambda + p.phi));
}

inline double mean(const GwlParams& p) { return raw_moment(p, 1.0); }

inline double central_moment(const GwlParams& p, int k) {
  if (k < 0) throw std::domain_error("central_moment: order must be nonnegative");
  if (k == 0) return 1.0;
  if (k == 1) return 0.0;
  const double mu = mean(p);
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double mj = (j == 0) ? 1.0 : raw_moment(p, j);
    acc += binom * mj * std::pow(-mu, k - j);
    binom *= static_cast<double>(k - j) / (j + 1);
  }
  return acc;
}

inline double variance(const GwlParams& p) { return central_moment(p, 2); }
inline double skewness(const GwlParams& p) {
  return central_moment(p, 3) / std::pow(variance(p), 1.5);
}
inline double excess_kurtosis(const GwlParams& p) {
  const double v = variance(p);
  return central_moment(p, 4) / (v * v) - 3.0;
}

// E[log T] = (psi(phi) + 1/(lambda+phi)) / alpha - log(lambda).
inline double mean_log(const GwlParams& p) {
  p.validate();
  return (digamma(p.phi) + 1.0 / (p.lambda + p.phi)) / p.alpha - std::log(p.lambda);
}

// Moment generating function as the series sum_r s^r E[T^r] / r!. The series
// has infinite radius for alpha > 1, radius lambda at alpha = 1, and radius
// zero for alpha < 1, where the request is rejected.
inline double mgf(const GwlParams& p, double s) {
  p.validate();
  if (s == 0.0) return 1.0;
  // The moment series has radius infinity for alpha > 1, lambda for
  // alpha = 1, and zero for alpha < 1. Outside it the transform is still
  // finite whenever s < 0 and is evaluated by quadrature on the mixture
  // representation; for s > 0 beyond the radius it is genuinely infinite.
  const bool series_ok =
      p.alpha > 1.0 || (p.alpha == 1.0 && std::abs(s) < p.lambda);
  if (!series_ok) {
    if (s > 0.0)
      throw std::domain_error("mgf: E[exp(sT)] is infinite for these arguments");
    const double phi = p.phi, lam = p.lambda, alpha = p.alpha;
    const double lg = std::lgamma(phi);
    return detail::power_weighted_integral(
               phi,
               [=](double x) {
                 return (lam + x) *
                        std::exp(-x - lg + s * std::pow(x, 1.0 / alpha) / lam);
               },
               {}, "mgf") /
           (lam + phi);
  }
  const double log_abs_s = std::log(std::abs(s));
  double sum = 1.0;
  double log_rfact = 0.0;
  for (int r = 1; r <= 800; ++r) {
    log_rfact += std::log(static_cast<double>(r));
    const double sh = r / p.alpha + p.phi;
    const double log_mu = std::lgamma(sh) - std::lgamma(p.phi) - r * std::log(p.lambda) +
                          std::log(sh + p.lambda) - std::log(p.lambda + p.phi);
    const double log_term = r * log_abs_s + log_mu - log_rfact;
    const double term = std::exp(log_term);
    sum += (s < 0.0 && (r & 1)) ? -term : term;
    if (r > 4 && term < 1e-17 * std::abs(sum)) return sum;
  }
  throw std::domain_error("mgf: series did not converge within 800 terms");
}

namespace detail {

// F expressed through x = (lambda t)^alpha only; monotone in x.
inline double cdf_of_x(const GwlParams& p, double log_x) {
  const double x = std::exp(log_x);
  if (std::isinf(x)) return 1.0;
  if (x == 0.0) return 0.0;
  const double corr =
      std::exp(p.phi * log_x - x - std::lgamma(p.phi) - std::log(p.lambda + p.phi));
  const double v = reg_lower_gamma(p.phi, x) - corr;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace detail

// Quantile via Brent in log(x)-space, where the curve is parameter-tame for
// any alpha; t = x^(1/alpha) / lambda afterwards.
inline double quantile(const GwlParams& p, double prob) {
  p.validate();
  if (!(prob >= 0.0 && prob < 1.0))
    throw std::domain_error("quantile: probability must lie in [0,1)");
  if (prob == 0.0) return 0.0;

  auto g = [&](double log_x) { return detail::cdf_of_x(p, log_x) - prob; };
  double lo = std::log(std::max(p.phi, 1e-8));
  double hi = lo;
  for (int i = 0; i < 1200 && g(lo) > 0.0; ++i) lo -= 8.0;
  for (int i = 0; i < 1200 && g(hi) < 0.0; ++i) hi += 8.0;
  const RootResult r = find_root(g, lo, hi, 1e-13, 300);
  if (!r.converged) throw std::runtime_error("quantile: root search failed");
  return std::exp(r.root / p.alpha - std::log(p.lambda));
}

inline double median(const GwlParams& p) { return quantile(p, 0.5); }

// Mean residual life
//   r(t) = [ (lambda+phi+1/alpha) G(phi+1/alpha, x) - lambda t (lambda+phi) G(phi, x) ]
//          / ( lambda [ (lambda+phi) G(phi, x) + x^phi e^(-x) ] ),
// with G(s,x) the unnormalized upper incomplete gamma. Every term carries
// e^(-x); the whole expression is assembled in log scale so the deep tail
// stays finite until the true asymptote 1/h(t) takes over.
inline double mrl(const GwlParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("mrl: t must be nonnegative");
  if (t == 0.0) return mean(p);

  const auto pt = detail::gwl_point(p, t);
  if (pt.log_x > 690.0)
    return std::exp(-(std::log(p.alpha) + std::log(p.lambda) + (p.alpha - 1.0) * pt.log_lt));

  const double sa = p.phi + 1.0 / p.alpha;
  const double log_a = std::log(p.lambda + sa) + std::lgamma(sa) +
                       log_reg_upper_gamma(sa, pt.x);
  const double log_b = pt.log_lt + std::log(p.lambda + p.phi) + std::lgamma(p.phi) +
                       log_reg_upper_gamma(p.phi, pt.x);
  if (log_b >= log_a) return 0.0;
  const double log_num = log_a + std::log1p(-std::exp(log_b - log_a));
  const double log_c = std::log(p.lambda + p.phi) + std::lgamma(p.phi) +
                       log_reg_upper_gamma(p.phi, pt.x);
  const double log_d = p.phi * pt.log_x - pt.x;
  const double log_den = std::log(p.lambda) + log_add_exp(log_c, log_d);
  return std::exp(log_num - log_den);
}

// eta(phi, lambda) = integral_0^inf (lambda+y) log(lambda+y) y^(phi-1) e^(-y) dy
inline double entropy_eta(double phi, double lambda, QuadratureSpec spec = {}) {
  return detail::power_weighted_integral(
      phi,
      [lambda](double y) {
        return (lambda + y) * std::log(lambda + y) * std::exp(-y);
      },
      spec, "entropy_eta");
}

// Shannon entropy H = -E[log f(T)] in closed form up to the eta integral.
inline double shannon_entropy(const GwlParams& p) {
  p.validate();
  const double phi = p.phi, lam = p.lambda, alpha = p.alpha;
  const double eta = entropy_eta(phi, lam);
  return std::log(lam + phi) + std::lgamma(phi) - std::log(alpha) - std::log(lam) +
         phi * (1.0 + phi + lam) / (lam + phi) -
         (alpha * phi - 1.0) * digamma(phi) / alpha -
         (alpha * phi - 1.0) / (alpha * (lam + phi)) -
         eta / ((lam + phi) * std::tgamma(phi));
}

// Renyi entropy of order rho:
//   H_rho = [ (rho-1) log(alpha lambda) - rho log((lambda+phi) Gamma(phi)) + log delta ]
//           / (1 - rho),
//   delta = integral_0^inf u^((rho(alpha phi - 1) + 1 - alpha)/alpha)
//                          (lambda+u)^rho e^(-rho u) du.
inline double renyi_entropy(const GwlParams& p, double rho) {
  p.validate();
  if (!(rho > 0.0) || rho == 1.0)
    throw std::domain_error("renyi_entropy: order must be positive and != 1");
  const double phi = p.phi, lam = p.lambda, alpha = p.alpha;
  const double expo = (rho * (alpha * phi - 1.0) + 1.0 - alpha) / alpha;
  if (!(expo > -1.0))
    throw std::domain_error("renyi_entropy: integrand not integrable for these arguments");
  const double delta = detail::power_weighted_integral(
      expo + 1.0,
      [=](double u) { return std::exp(rho * std::log(lam + u) - rho * u); },
      {}, "renyi_entropy");
  if (!(delta > 0.0))
    throw std::runtime_error("renyi_entropy: degenerate integral");
  return ((rho - 1.0) * (std::log(alpha) + std::log(lam)) -
          rho * (std::log(lam + phi) + std::lgamma(phi)) + std::log(delta)) /
         (1.0 - rho);
}

// Lorenz curve L(p) = (1/mu) integral_0^{F^-1(p)} t f(t) dt, reduced to
//   L(p) = P(phi + 1/alpha, x_p) - x_p^(phi+1/alpha) e^(-x_p)
//          / (Gamma(phi+1/alpha) (1/alpha + phi + lambda)).
inline double lorenz(const GwlParams& p, double prob) {
  p.validate();
  if (!(prob >= 0.0 && prob < 1.0))
    throw std::domain_error("lorenz: probability must lie in [0,1)");
  if (prob == 0.0) return 0.0;
  const double tp = quantile(p, prob);
  const auto pt = detail::gwl_point(p, tp);
  const double s = p.phi + 1.0 / p.alpha;
  const double corr = std::exp(s * pt.log_x - pt.x - std::lgamma(s) -
                               std::log(s + p.lambda));
  const double v = reg_lower_gamma(s, pt.x) - corr;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

inline double mixture_weight(const GwlParams& p) {
  p.validate();
  return p.lambda / (p.lambda + p.phi);
}

// Exact sampler through the gamma-mixture representation of W = (lambda T)^alpha.
inline std::vector<double> sample(const GwlParams& p, std::size_t n, Rng& rng) {
  p.validate();
  std::vector<double> out(n);
  const double w = p.lambda / (p.lambda + p.phi);
  const double log_lambda = std::log(p.lambda);
  for (auto& t : out) {
    const double shape = rng.uniform() < w ? p.phi : p.phi + 1.0;
    t = std::exp(rng.log_gamma_variate(shape) / p.alpha - log_lambda);
  }
  return out;
}

inline std::vector<double> sample(const GwlParams& p, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample(p, n, rng);
}

enum class HazardShape {
  increasing,
  decreasing,
  bathtub,
  unimodal,
  decreasing_increasing_decreasing,
  other
};

inline const char* to_string(HazardShape s) {
  switch (s) {
    case HazardShape::increasing: return "increasing";
    case HazardShape::decreasing: return "decreasing";
    case HazardShape::bathtub: return "bathtub";
    case HazardShape::unimodal: return "unimodal";
    case HazardShape::decreasing_increasing_decreasing:
      return "decreasing-increasing-decreasing";
    case HazardShape::other: return "other";
  }
  return "other";
}

struct HazardShapeReport {
  HazardShape shape = HazardShape::other;
  std::string sign_pattern;  // collapsed sign runs of h', e.g. "-+-"
};

// Sign-pattern classification of h' on a log-spaced quantile grid. Runs of
// equal sign are collapsed; near-zero differences (relative to the local
// hazard level) are treated as flat and merged into their neighbors.
inline HazardShapeReport classify_hazard_shape(const GwlParams& p, int grid_points = 600) {
  p.validate();
  if (grid_points < 16) throw std::domain_error("classify_hazard_shape: grid too small");
  const double t_lo = quantile(p, 0.001);
  const double t_hi = quantile(p, 0.999);
  const double l_lo = std::log(t_lo), l_hi = std::log(t_hi);

  HazardShapeReport rep;
  double prev_h = hazard(p, t_lo);
  char last_sign = 0;
  for (int i = 1; i < grid_points; ++i) {
    const double t = std::exp(l_lo + (l_hi - l_lo) * i / (grid_points - 1.0));
    const double h = hazard(p, t);
    const double d = h - prev_h;
    const double tol = 1e-10 * 0.5 * (std::abs(h) + std::abs(prev_h));
    char s = 0;
    if (d > tol) s = '+';
    else if (d < -tol) s = '-';
    if (s != 0 && s != last_sign) {
      rep.sign_pattern.push_back(s);
      last_sign = s;
    }
    prev_h = h;
  }

  if (rep.sign_pattern == "+") rep.shape = HazardShape::increasing;
  else if (rep.sign_pattern == "-") rep.shape = HazardShape::decreasing;
  else if (rep.sign_pattern == "-+") rep.shape = HazardShape::bathtub;
  else if (rep.sign_pattern == "+-") rep.shape = HazardShape::unimodal;
  else if (rep.sign_pattern == "-+-") rep.shape = HazardShape::decreasing_increasing_decreasing;
  else rep.shape = HazardShape::other;
  return rep;
}

}  // namespace gwl
