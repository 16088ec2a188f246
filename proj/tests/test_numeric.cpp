#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gwl/minimize.hpp"
#include "gwl/quadrature.hpp"
#include "gwl/rootfind.hpp"

using namespace gwl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("adaptive quadrature on finite intervals") {
  auto r = integrate([](double x) { return std::exp(-x); }, 0.0, 40.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.value, WithinRel(1.0, 1e-12));

  // integrable endpoint singularity: plain Gauss-Kronrod cannot certify
  // 1e-10 here (the error estimate plateaus near 2e-9), but the value
  // itself settles well inside 1e-8
  auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(s.error_estimate < 1e-8);
  CHECK_THAT(s.value, WithinRel(2.0, 1e-8));

  // oscillatory with a tiny answer; checks cancellation control
  auto o = integrate([](double x) { return std::cos(7.0 * x) * std::exp(-x * x); },
                     -10.0, 10.0);
  REQUIRE(o.converged);
  CHECK_THAT(o.value, WithinAbs(8.48139974871402235e-6, 1e-14));
}

TEST_CASE("semi-infinite quadrature") {
  auto r = integrate_to_inf([](double y) { return (1.0 + y) * std::log(1.0 + y) * std::exp(-y); },
                            0.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.value, WithinRel(1.59634736232319407, 1e-11));

  auto g = integrate_to_inf(
      [](double y) { return (0.7 + y) * std::log(0.7 + y) * std::pow(y, 1.5) * std::exp(-y); },
      0.0);
  REQUIRE(g.converged);
  CHECK_THAT(g.value, WithinRel(5.42541395773385535, 1e-11));
}

TEST_CASE("Brent root finder") {
  auto r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.root, WithinRel(std::sqrt(2.0), 1e-13));

  auto c = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  REQUIRE(c.converged);
  CHECK_THAT(c.root, WithinRel(0.739085133215160642, 1e-13));

  CHECK_THROWS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0));
}

TEST_CASE("Nelder-Mead on standard problems") {
  // quadratic bowl
  auto q = minimize([](const std::vector<double>& v) {
    return (v[0] - 3.0) * (v[0] - 3.0) + 10.0 * (v[1] + 1.0) * (v[1] + 1.0);
  }, {0.0, 0.0});
  REQUIRE(q.converged);
  CHECK_THAT(q.x[0], WithinAbs(3.0, 1e-6));
  CHECK_THAT(q.x[1], WithinAbs(-1.0, 1e-6));

  // Rosenbrock valley
  MinimizeOptions opt;
  opt.max_iterations = 20000;
  opt.restarts = 2;
  auto r = minimize([](const std::vector<double>& v) {
    const double a = 1.0 - v[0];
    const double b = v[1] - v[0] * v[0];
    return a * a + 100.0 * b * b;
  }, {-1.2, 1.0}, opt);
  REQUIRE(r.converged);
  CHECK_THAT(r.x[0], WithinAbs(1.0, 1e-5));
  CHECK_THAT(r.x[1], WithinAbs(1.0, 1e-5));

  // non-finite regions are treated as forbidden, not fatal
  auto g = minimize([](const std::vector<double>& v) {
    if (v[0] < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (v[0] - 2.0) * (v[0] - 2.0);
  }, {5.0});
  CHECK_THAT(g.x[0], WithinAbs(2.0, 1e-6));
}

TEST_CASE("numeric Hessian of a known quadratic") {
  auto f = [](const std::vector<double>& v) {
    return 2.0 * v[0] * v[0] + 3.0 * v[0] * v[1] + 4.0 * v[1] * v[1];
  };
  SymMatrix h = numeric_hessian(f, {0.7, -0.3}, 1e-4);
  CHECK_THAT(h(0, 0), WithinRel(4.0, 1e-6));
  CHECK_THAT(h(0, 1), WithinRel(3.0, 1e-6));
  CHECK_THAT(h(1, 1), WithinRel(8.0, 1e-6));
}

TEST_CASE("SPD inverse via Cholesky") {
  SymMatrix m(2);
  m(0, 0) = 4.0; m(0, 1) = 1.0; m(1, 0) = 1.0; m(1, 1) = 3.0;
  auto inv = m.inverse_spd();
  REQUIRE(inv.has_value());
  // inverse of [[4,1],[1,3]] is [[3,-1],[-1,4]]/11
  CHECK_THAT((*inv)(0, 0), WithinRel(3.0 / 11.0, 1e-12));
  CHECK_THAT((*inv)(0, 1), WithinRel(-1.0 / 11.0, 1e-12));
  CHECK_THAT((*inv)(1, 1), WithinRel(4.0 / 11.0, 1e-12));

  SymMatrix bad(2);
  bad(0, 0) = 1.0; bad(0, 1) = 5.0; bad(1, 0) = 5.0; bad(1, 1) = 1.0;
  CHECK_FALSE(bad.inverse_spd().has_value());
}
