#pragma once

// Monte Carlo estimator study: draw replicated samples at a fixed truth,
// fit every requested method on each sample, and aggregate mean relative
// estimates, mean squared errors, and failure proportions per method and
// sample size.
//
// Reproducibility contract: the report depends only on the configuration.
// Every replicate derives its own generator seed from (master_seed, n, j),
// results land in preallocated slots indexed by j, and aggregation walks
// those slots in order, so the thread count cannot change any output bit.

#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gwl/distribution.hpp"
#include "gwl/estimation.hpp"
#include "gwl/rng.hpp"

namespace gwl {

struct StudyConfig {
  GwlParams truth{2.0, 0.5, 0.1};
  std::vector<std::size_t> n_grid{50, 150, 250};
  int replicates = 500;
  std::vector<Method> methods = all_methods();
  std::uint64_t master_seed = 20150401;
  bool start_at_truth = true;  // estimator-comparison protocol: common start
  int threads = 0;             // 0 = hardware concurrency

  void validate() const {
    truth.validate();
    if (n_grid.empty()) throw std::invalid_argument("study: empty sample-size grid");
    for (std::size_t n : n_grid)
      if (n < 2) throw std::invalid_argument("study: sample sizes must be at least 2");
    if (replicates < 1) throw std::invalid_argument("study: replicates must be positive");
    if (methods.empty()) throw std::invalid_argument("study: no methods selected");
  }
};

struct CellStats {
  Method method;
  std::size_t n;
  std::array<double, 3> mre;  // mean of estimate/truth per coordinate
  std::array<double, 3> mse;  // mean squared error per coordinate
  double failure_proportion;
  int successes;
};

struct StudyReport {
  StudyConfig config;
  std::vector<CellStats> cells;  // ordered by n_grid, then methods
};

namespace detail {

struct ReplicateOutcome {
  std::array<double, 3> estimate;
  bool failed;
};

}  // namespace detail

// Runs the study. `progress`, when provided, is invoked after each completed
// replicate as progress(n, done, total) and may be called from worker
// threads (serialized internally).
inline StudyReport run_study(
    const StudyConfig& config,
    const std::function<void(std::size_t, int, int)>& progress = nullptr) {
  config.validate();
  StudyReport report;
  report.config = config;

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_threads =
      config.threads > 0 ? static_cast<unsigned>(config.threads) : hw;

  FitOptions fit_opt;
  fit_opt.compute_covariance = false;
  fit_opt.polish_mle = false;
  fit_opt.minimize.x_tol = 1e-7;
  fit_opt.minimize.f_tol = 1e-9;
  fit_opt.minimize.max_iterations = 1500;
  fit_opt.minimize.restarts = 1;
  if (config.start_at_truth) {
    fit_opt.start = config.truth;
    fit_opt.multistart = false;
  }

  const std::array<double, 3> truth{config.truth.phi, config.truth.lambda,
                                    config.truth.alpha};

  for (std::size_t n : config.n_grid) {
    const int total = config.replicates;
    std::vector<std::vector<detail::ReplicateOutcome>> slots(
        total, std::vector<detail::ReplicateOutcome>(config.methods.size()));

    std::mutex progress_mutex;
    int done = 0;
    auto work = [&](int j_begin, int j_end) {
      for (int j = j_begin; j < j_end; ++j) {
        Rng rng(derive_seed(config.master_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(j)));
        const std::vector<double> draws = sample(config.truth, n, rng);
        const LifetimeSample s(draws);
        for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
          FitResult r;
          try {
            r = fit(config.methods[mi], s, fit_opt);
          } catch (const std::exception&) {
            r.failed = true;
          }
          slots[j][mi] = {{r.estimate.phi, r.estimate.lambda, r.estimate.alpha},
                          r.failed};
        }
        if (progress) {
          std::lock_guard<std::mutex> lock(progress_mutex);
          progress(n, ++done, total);
        }
      }
    };

    if (n_threads <= 1 || total < 2) {
      work(0, total);
    } else {
      std::vector<std::thread> pool;
      const int chunk = (total + static_cast<int>(n_threads) - 1) /
                        static_cast<int>(n_threads);
      for (unsigned t = 0; t < n_threads; ++t) {
        const int b = static_cast<int>(t) * chunk;
        const int e = std::min(total, b + chunk);
        if (b >= e) break;
        pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }

    // sequential aggregation in replicate order
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      CellStats cell;
      cell.method = config.methods[mi];
      cell.n = n;
      cell.mre = {0.0, 0.0, 0.0};
      cell.mse = {0.0, 0.0, 0.0};
      int successes = 0;
      for (int j = 0; j < total; ++j) {
        const auto& o = slots[j][mi];
        if (o.failed) continue;
        ++successes;
        for (int i = 0; i < 3; ++i) {
          cell.mre[i] += o.estimate[i] / truth[i];
          const double d = o.estimate[i] - truth[i];
          cell.mse[i] += d * d;
        }
      }
      cell.successes = successes;
      cell.failure_proportion =
          static_cast<double>(total - successes) / static_cast<double>(total);
      for (int i = 0; i < 3; ++i) {
        if (successes > 0) {
          cell.mre[i] /= successes;
          cell.mse[i] /= successes;
        } else {
          cell.mre[i] = std::numeric_limits<double>::quiet_NaN();
          cell.mse[i] = std::numeric_limits<double>::quiet_NaN();
        }
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

// Long-format CSV, one row per (method, n, parameter).
inline void export_report_csv(const StudyReport& report, std::ostream& os) {
  os << "method,n,param,mre,mse,failure_proportion\n";
  static const char* param_names[3] = {"phi", "lambda", "alpha"};
  char buf[160];
  for (const auto& cell : report.cells) {
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.12g,%.12g,%.12g",
                    to_string(cell.method), cell.n, param_names[i], cell.mre[i],
                    cell.mse[i], cell.failure_proportion);
      os << buf << '\n';
    }
  }
}

}  // namespace gwl
