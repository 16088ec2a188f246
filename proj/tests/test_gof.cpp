#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gwl/datasets.hpp"
#include "gwl/gof.hpp"

using namespace gwl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("information criteria arithmetic") {
  const auto ic = information_criteria(-206.0155, 3, 50);
  CHECK_THAT(ic.aic, WithinRel(418.031, 1e-10));
  CHECK_THAT(ic.aicc, WithinRel(418.031 + 24.0 / 46.0, 1e-10));
  // AICc degenerates when n <= k+1
  CHECK(std::isinf(information_criteria(-10.0, 3, 4).aicc));
}

TEST_CASE("asymptotic Kolmogorov p-value") {
  // z = 1: 2(e^-2 - e^-8 + e^-18 - ...)
  CHECK_THAT(ks_asymptotic_p(1.0, 1), WithinRel(0.2699996716773545, 1e-12));
  CHECK_THAT(ks_asymptotic_p(0.5, 4), WithinRel(0.2699996716773545, 1e-12));
  CHECK(ks_asymptotic_p(1e-12, 100) == 1.0);
  CHECK(ks_asymptotic_p(0.9, 10000) < 1e-12);
}

TEST_CASE("KS statistic on hand-checked cases") {
  // F(t) = t/4 on {1,2,3}: the largest gap is at the ends
  const auto r = ks_test({1.0, 2.0, 3.0}, [](double t) { return t / 4.0; });
  CHECK_THAT(r.statistic, WithinRel(0.25, 1e-14));
  // data exactly at the midpoints (2i-1)/(2n) give D = 1/(2n)
  const int n = 20;
  std::vector<double> mid;
  for (int i = 1; i <= n; ++i) mid.push_back((2.0 * i - 1.0) / (2.0 * n));
  const auto m = ks_test(mid, [](double t) { return t; });
  CHECK_THAT(m.statistic, WithinRel(1.0 / (2.0 * n), 1e-12));
}

TEST_CASE("TTT transform") {
  const auto curve = ttt_transform({3.0, 1.0, 2.0});
  REQUIRE(curve.size() == 4);
  CHECK(curve[0] == std::pair{0.0, 0.0});
  CHECK_THAT(curve[1].first, WithinRel(1.0 / 3.0, 1e-14));
  CHECK_THAT(curve[1].second, WithinRel(0.5, 1e-14));
  CHECK_THAT(curve[2].second, WithinRel(5.0 / 6.0, 1e-14));
  CHECK_THAT(curve[3].second, WithinRel(1.0, 1e-14));
  CHECK_THROWS(ttt_transform({}));
}

TEST_CASE("built-in datasets") {
  const auto aar = aarset_data();
  REQUIRE(aar.size() == 50);
  CHECK(*std::min_element(aar.begin(), aar.end()) == 0.1);
  CHECK(*std::max_element(aar.begin(), aar.end()) == 86.0);
  // the corrected variant replaces the out-of-order 15 with 75
  const auto fixed = aarset_data(true);
  CHECK(std::count(aar.begin(), aar.end(), 15.0) == 1);
  CHECK(std::count(fixed.begin(), fixed.end(), 15.0) == 0);
  CHECK(std::count(fixed.begin(), fixed.end(), 75.0) == 1);

  const auto cant = cantareira_data();
  REQUIRE(cant.size() == 83);
  CHECK(std::count(cant.begin(), cant.end(), 144.9) == 1);
}

TEST_CASE("model comparison on the reservoir data") {
  LifetimeSample cant(cantareira_data());
  const ModelComparison cmp = compare_models(cant);
  REQUIRE(cmp.rows.size() == 5);
  CHECK(cmp.rows[0].model == "GWL");
  CHECK(cmp.gwl_method_used == "mle");
  CHECK_THAT(cmp.rows[0].aic, WithinAbs(775.431, 0.5));
  // GG is a near-tie here
  const auto& gg = cmp.rows[1];
  CHECK(gg.model == "GG");
  CHECK_THAT(gg.aic, WithinAbs(cmp.rows[0].aic, 1.0));
  for (const auto& row : cmp.rows) {
    CHECK(std::isfinite(row.aic));
    CHECK(row.aicc > row.aic);
    CHECK(row.ks_statistic > 0.0);
    CHECK(row.ks_p_value >= 0.0);
  }
}

TEST_CASE("model comparison on the device failure data") {
  LifetimeSample aar(aarset_data());
  const ModelComparison cmp = compare_models(aar);
  REQUIRE(cmp.rows.size() == 5);
  // GWL should win by a wide margin on bathtub data
  for (std::size_t i = 1; i < cmp.rows.size(); ++i)
    CHECK(cmp.rows[0].aic < cmp.rows[i].aic - 2.0);
}
