#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "gwl/distribution.hpp"
#include "gwl/gof.hpp"
#include "gwl/rng.hpp"

using namespace gwl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
  CHECK(derive_seed(7, 50, 0) == derive_seed(7, 50, 0));
}

TEST_CASE("uniform stays inside the open interval") {
  Rng rng(99);
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(5);
  const int n = 400000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK_THAT(s1 / n, WithinAbs(0.0, 4.0 / std::sqrt(static_cast<double>(n))));
  CHECK_THAT(s2 / n, WithinAbs(1.0, 6.0 / std::sqrt(static_cast<double>(n))));
}

TEST_CASE("gamma variates match their first two moments") {
  for (double shape : {0.3, 1.0, 4.7}) {
    Rng rng(11);
    const int n = 300000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = rng.gamma_variate(shape);
      s1 += g;
      s2 += g * g;
    }
    const double mean = s1 / n, var = s2 / n - mean * mean;
    const double se_mean = std::sqrt(shape / n);
    CHECK_THAT(mean, WithinAbs(shape, 5.0 * se_mean));
    CHECK_THAT(var, WithinAbs(shape, 0.05 * (1.0 + shape)));
  }
}

TEST_CASE("tiny shapes stay positive in log space") {
  Rng rng(301);
  for (int i = 0; i < 5000; ++i) {
    const double lg = rng.log_gamma_variate(0.002);
    REQUIRE(std::isfinite(lg));  // log of a positive underflowing variate
    REQUIRE(lg < 100.0);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const GwlParams p{2, 0.5, 0.1};
  const auto a = sample(p, 50, 12345);
  const auto b = sample(p, 50, 12345);
  const auto c = sample(p, 50, 54321);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("sample moments match the distribution") {
  for (const GwlParams p : {GwlParams{2, 1, 1}, GwlParams{0.5, 0.7, 1.5},
                            GwlParams{4, 1, 0.5}}) {
    const int n = 200000;
    Rng rng(77);
    const auto draws = sample(p, n, rng);
    double s1 = 0.0, s2 = 0.0;
    for (double t : draws) {
      s1 += t;
      s2 += t * t;
    }
    const double m = s1 / n;
    const double v = s2 / n - m * m;
    const double se_mean = std::sqrt(variance(p) / n);
    CHECK_THAT(m, WithinAbs(mean(p), 5.0 * se_mean));
    CHECK_THAT(v, WithinRel(variance(p), 0.08));
  }
}

TEST_CASE("empirical cdf matches the analytic cdf") {
  for (const GwlParams p : {GwlParams{2, 1, 1}, GwlParams{0.5, 0.7, 1.5},
                            GwlParams{2, 0.5, 0.1}}) {
    const int n = 100000;
    auto draws = sample(p, n, 424242);
    std::sort(draws.begin(), draws.end());
    const auto ks = ks_test(draws, [&](double t) { return cdf(p, t); });
    // the asymptotic 0.001 critical value is about 1.95/sqrt(n)
    CHECK(ks.statistic < 1.95 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("mean of log draws matches the closed form") {
  const GwlParams p{2, 0.5, 0.1};
  const int n = 200000;
  const auto draws = sample(p, n, 9001);
  double s = 0.0;
  for (double t : draws) s += std::log(t);
  // Var(log T) = (psi'(phi)-ish)/alpha^2 is about 66 here, so the standard
  // error of the mean is about 0.018
  CHECK_THAT(s / n, WithinAbs(mean_log(p), 0.1));
}
