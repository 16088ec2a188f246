#pragma once

// Goodness-of-fit utilities: information criteria, the Kolmogorov-Smirnov
// statistic with its asymptotic p-value, the scaled TTT transform used to
// diagnose hazard shape from data, and the five-model comparison driver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gwl/competitors.hpp"
#include "gwl/distribution.hpp"
#include "gwl/estimation.hpp"

namespace gwl {

struct InformationCriteria {
  double aic;
  double aicc;
};

inline InformationCriteria information_criteria(double loglik, int k, std::size_t n) {
  const double aic = -2.0 * loglik + 2.0 * k;
  const double denom = static_cast<double>(n) - k - 1.0;
  const double aicc = denom > 0.0
                          ? aic + 2.0 * k * (k + 1.0) / denom
                          : std::numeric_limits<double>::infinity();
  return {aic, aicc};
}

struct KsResult {
  double statistic;
  double p_value;
};

// Asymptotic two-sided Kolmogorov p-value: 2 * sum (-1)^(k-1) exp(-2 k^2 z^2)
// with z = sqrt(n) * D.
inline double ks_asymptotic_p(double d, std::size_t n) {
  const double z = std::sqrt(static_cast<double>(n)) * d;
  if (z < 1e-8) return 1.0;
  double acc = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * z * z);
    acc += (k % 2 == 1 ? term : -term);
    if (term < 1e-12) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * acc));
}

template <class Cdf>
KsResult ks_test(const std::vector<double>& sorted_data, Cdf&& model_cdf) {
  const std::size_t n = sorted_data.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = model_cdf(sorted_data[i]);
    const double upper = (i + 1.0) / static_cast<double>(n) - fi;
    const double lower = fi - static_cast<double>(i) / static_cast<double>(n);
    d = std::max({d, upper, lower});
  }
  return {d, ks_asymptotic_p(d, n)};
}

// Scaled TTT transform on the order statistics; the returned polyline starts
// at (0,0) and ends at (1,1). Concave curves indicate increasing hazard,
// convex decreasing, and an S below-then-above the diagonal a bathtub.
inline std::vector<std::pair<double, double>> ttt_transform(std::vector<double> data) {
  if (data.empty()) throw std::invalid_argument("ttt_transform: no observations");
  std::sort(data.begin(), data.end());
  const std::size_t n = data.size();
  double total = 0.0;
  for (double v : data) total += v;
  std::vector<std::pair<double, double>> out;
  out.reserve(n + 1);
  out.emplace_back(0.0, 0.0);
  double partial = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    partial += data[r - 1];
    const double g = (partial + (n - r) * data[r - 1]) / total;
    out.emplace_back(static_cast<double>(r) / n, g);
  }
  return out;
}

struct ComparisonRow {
  std::string model;
  std::vector<std::pair<std::string, double>> params;
  double loglik;
  double aic;
  double aicc;
  double ks_statistic;
  double ks_p_value;
  bool converged;
  std::string notes;
};

struct ModelComparison {
  std::vector<ComparisonRow> rows;  // GWL first, then GG, GW, GEP, EW
  std::string gwl_method_used;      // "mle" or "mps", whichever gave the better loglik
};

// Fits the GWL model by both maximum likelihood and maximum product of
// spacings, keeps whichever achieves the higher log-likelihood, then fits
// the four competitors and scores everything on one table.
inline ModelComparison compare_models(const LifetimeSample& s, FitOptions gwl_opt = {}) {
  ModelComparison out;
  const std::size_t n = s.size();

  FitOptions mle_opt = gwl_opt;
  FitOptions mps_opt = gwl_opt;
  mps_opt.compute_covariance = false;
  const FitResult by_mle = fit(Method::mle, s, mle_opt);
  const FitResult by_mps = fit(Method::mps, s, mps_opt);
  const bool use_mle = by_mle.loglik >= by_mps.loglik;
  const FitResult& gfit = use_mle ? by_mle : by_mps;
  out.gwl_method_used = use_mle ? "mle" : "mps";

  {
    ComparisonRow row;
    row.model = "GWL";
    row.params = {{"phi", gfit.estimate.phi},
                  {"lambda", gfit.estimate.lambda},
                  {"alpha", gfit.estimate.alpha}};
    row.loglik = gfit.loglik;
    const auto ic = information_criteria(gfit.loglik, 3, n);
    row.aic = ic.aic;
    row.aicc = ic.aicc;
    const auto ks = ks_test(s.sorted(), [&](double t) { return cdf(gfit.estimate, t); });
    row.ks_statistic = ks.statistic;
    row.ks_p_value = ks.p_value;
    row.converged = gfit.converged;
    row.notes = std::string("fit by ") + out.gwl_method_used;
    out.rows.push_back(std::move(row));
  }

  for (CompetitorTag tag :
       {CompetitorTag::gg, CompetitorTag::gw, CompetitorTag::gep, CompetitorTag::ew}) {
    const CompetitorFit cf = fit_competitor(tag, s);
    ComparisonRow row;
    row.model = to_string(tag);
    const auto names = competitor_param_names(tag);
    for (int i = 0; i < 3; ++i) row.params.emplace_back(names[i], cf.params[i]);
    row.loglik = cf.loglik;
    const auto ic = information_criteria(cf.loglik, 3, n);
    row.aic = ic.aic;
    row.aicc = ic.aicc;
    const auto ks =
        ks_test(s.sorted(), [&](double t) { return competitor_cdf(tag, cf.params, t); });
    row.ks_statistic = ks.statistic;
    row.ks_p_value = ks.p_value;
    row.converged = cf.converged;
    row.notes = cf.notes;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace gwl
