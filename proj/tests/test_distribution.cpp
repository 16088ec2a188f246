#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gwl/distribution.hpp"
#include "gwl/quadrature.hpp"
#include "gwl/special.hpp"

using namespace gwl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// direct Lindley density: lambda^2 (1+t) e^(-lambda t) / (lambda + 1)
double lindley_pdf(double lam, double t) {
  return lam * lam * (1.0 + t) * std::exp(-lam * t) / (lam + 1.0);
}

// weighted Lindley density:
// lambda^(phi+1) t^(phi-1) (lambda + lambda t) ... written via the general form
double weighted_lindley_pdf(double phi, double lam, double t) {
  return std::pow(lam, phi + 1.0) * std::pow(t, phi - 1.0) * (1.0 + t) *
         std::exp(-lam * t) / ((lam + phi) * std::tgamma(phi));
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS(GwlParams{0.0, 1.0, 1.0}.validate());
  CHECK_THROWS(GwlParams{1.0, -2.0, 1.0}.validate());
  CHECK_THROWS(GwlParams{1.0, 1.0, 0.0}.validate());
  CHECK_NOTHROW(GwlParams{0.3, 2.0, 5.0}.validate());
}

TEST_CASE("pdf against reference values") {
  CHECK_THAT(pdf({2, 1, 1}, 0.5), WithinRel(0.151632664928158356, 1e-13));
  CHECK_THAT(pdf({2, 1, 1}, 1.7), WithinRel(0.279505791800684015, 1e-13));
  CHECK_THAT(pdf({0.5, 0.7, 1.5}, 0.3), WithinRel(0.527381785510721112, 1e-13));
  CHECK_THAT(pdf({0.5, 0.7, 1.5}, 2.2), WithinRel(0.17115871047902924, 1e-13));
  CHECK_THAT(pdf({4, 1, 0.5}, 1.0), WithinRel(0.0122626480390480774, 1e-13));
  CHECK_THAT(pdf({4, 1, 0.5}, 30.0), WithinRel(0.0135403591203486301, 1e-13));
  CHECK_THAT(pdf({1, 0.2, 0.75}, 0.8), WithinRel(0.0695172185525416517, 1e-13));
  CHECK_THAT(pdf({2, 0.5, 0.1}, 3.0), WithinRel(0.00786685525402523038, 1e-13));
  CHECK_THAT(pdf({0.5, 1, 1}, 1e-3), WithinRel(11.894154831234654, 1e-13));
}

TEST_CASE("cdf against reference values") {
  CHECK_THAT(cdf({2, 1, 1}, 0.5), WithinRel(0.0396597887883304126, 1e-13));
  CHECK_THAT(cdf({2, 1, 1}, 1.7), WithinRel(0.330769356886815386, 1e-13));
  CHECK_THAT(cdf({0.5, 0.7, 1.5}, 0.3), WithinRel(0.206660706761207197, 1e-13));
  CHECK_THAT(cdf({0.5, 0.7, 1.5}, 2.2), WithinRel(0.85328059421976747, 1e-13));
  CHECK_THAT(cdf({4, 1, 0.5}, 1.0), WithinRel(0.00672550883710573169, 1e-13));
  CHECK_THAT(cdf({4, 1, 0.5}, 30.0), WithinRel(0.670279160489584991, 1e-13));
  CHECK_THAT(cdf({1, 0.2, 0.75}, 0.8), WithinRel(0.0598215927609914682, 1e-13));
  CHECK_THAT(cdf({2, 0.5, 0.1}, 3.0), WithinRel(0.126346372148708355, 1e-13));
  CHECK_THAT(cdf({0.5, 1, 1}, 1e-3), WithinRel(0.0237883191710039071, 1e-13));
}

TEST_CASE("alpha = 1 reduces to the weighted Lindley, phi = 1 further to Lindley") {
  for (double t : {0.1, 0.9, 3.7, 12.0}) {
    CHECK_THAT(pdf({2.4, 1.3, 1.0}, t), WithinRel(weighted_lindley_pdf(2.4, 1.3, t), 1e-12));
    CHECK_THAT(pdf({1.0, 0.8, 1.0}, t), WithinRel(lindley_pdf(0.8, t), 1e-12));
  }
  // Lindley cdf has the closed form 1 - (1 + lambda t/(lambda+1)) e^(-lambda t)
  for (double t : {0.5, 2.0, 8.0}) {
    const double lam = 0.8;
    const double ref = 1.0 - (1.0 + lam * t / (lam + 1.0)) * std::exp(-lam * t);
    CHECK_THAT(cdf({1.0, lam, 1.0}, t), WithinRel(ref, 1e-12));
  }
}

TEST_CASE("cdf equals the integral of the pdf") {
  for (const GwlParams p : {GwlParams{2, 1, 1}, GwlParams{0.5, 0.7, 1.5},
                            GwlParams{4, 1, 0.5}, GwlParams{1, 0.2, 0.75}}) {
    for (double t : {0.4, 1.3, 6.0}) {
      const auto r = integrate([&](double u) { return pdf(p, u); }, 0.0, t);
      REQUIRE(r.converged);
      CHECK_THAT(cdf(p, t), WithinRel(r.value, 1e-9));
    }
  }
}

TEST_CASE("survival, hazard, and the deep tail") {
  const GwlParams p{2, 1, 1};
  for (double t : {0.5, 2.0, 10.0}) {
    CHECK_THAT(cdf(p, t) + survival(p, t), WithinAbs(1.0, 1e-12));
    CHECK_THAT(hazard(p, t), WithinRel(pdf(p, t) / survival(p, t), 1e-10));
  }
  // survival underflows around t ~ 745 at these parameters; the log form
  // and the hazard must stay finite far beyond that
  CHECK(std::isfinite(log_survival(p, 2000.0)));
  CHECK_THAT(log_survival(p, 2000.0), WithinRel(-1985.8953077445838, 1e-12));
  CHECK_THAT(hazard(p, 2000.0), WithinRel(1.0, 1e-3));  // alpha = 1: h -> lambda
}

TEST_CASE("hazard limits at zero") {
  // alpha*phi > 1: h(0) = 0; alpha*phi < 1: infinite; alpha*phi = 1: finite
  CHECK(hazard_limit_at_zero({2, 1, 1}) == 0.0);
  CHECK(std::isinf(hazard_limit_at_zero({0.5, 1, 1})));
  const double expected = 1.0 * 1.0 / ((1.0 + 1.0) * 1.0);  // alpha lambda^2/((lambda+phi)Gamma(phi))
  CHECK_THAT(hazard_limit_at_zero({1, 1, 1}), WithinRel(expected, 1e-12));
  // ... and the phi=2, alpha=0.5 case with alpha*phi = 1
  const double e2 = 0.5 * 1.0 / ((1.0 + 2.0) * 1.0);
  CHECK_THAT(hazard_limit_at_zero({2, 1, 0.5}), WithinRel(e2, 1e-12));
}

TEST_CASE("hazard limit at infinity is governed by alpha alone") {
  // alpha < 1: tends to zero even when alpha*phi > 1
  CHECK(hazard_limit_at_inf({2, 1, 0.5}) == 0.0);
  CHECK(hazard_limit_at_inf({4, 1, 0.5}) == 0.0);
  // alpha = 1: tends to lambda
  CHECK_THAT(hazard_limit_at_inf({2, 0.7, 1}), WithinRel(0.7, 1e-12));
  // alpha > 1: diverges
  CHECK(std::isinf(hazard_limit_at_inf({0.5, 1, 1.5})));
  // numeric hazard approaches the claimed limits; the correction term decays
  // like 1/x, so the 1e-3 window needs x = lambda*t in the thousands
  CHECK(hazard({2, 1, 0.5}, 1e5) < hazard({2, 1, 0.5}, 1e3));
  CHECK_THAT(hazard({2, 0.7, 1}, 800.0), WithinRel(0.697506019236805, 1e-10));
  CHECK_THAT(hazard({2, 0.7, 1}, 8000.0), WithinRel(0.7, 1e-3));
}

TEST_CASE("raw moments against reference values") {
  CHECK_THAT(raw_moment({2, 1, 1}, 1), WithinRel(8.0 / 3.0, 1e-13));
  CHECK_THAT(raw_moment({2, 1, 1}, 2), WithinRel(10.0, 1e-13));
  CHECK_THAT(raw_moment({2, 0.5, 1.5}, 1), WithinRel(3.81159123690394191, 1e-13));
  CHECK_THAT(raw_moment({2, 0.5, 1.5}, 2), WithinRel(17.0393720133510072, 1e-13));
  CHECK_THAT(raw_moment({4, 1, 0.5}, 1), WithinRel(28.0, 1e-13));
  CHECK_THAT(raw_moment({0.5, 0.7, 1.5}, 3), WithinRel(5.8309037900874648, 1e-13));
  // fractional orders are fine as long as r > -alpha*phi
  CHECK_NOTHROW(raw_moment({2, 1, 1}, -1.5));
  CHECK_THROWS(raw_moment({2, 1, 1}, -2.0));
}

TEST_CASE("moments agree with quadrature") {
  for (const GwlParams p : {GwlParams{2, 1, 1}, GwlParams{0.5, 0.7, 1.5}}) {
    for (int r : {1, 2, 3}) {
      const auto q = integrate_to_inf(
          [&](double t) { return std::pow(t, r) * pdf(p, t); }, 0.0);
      REQUIRE(q.converged);
      CHECK_THAT(raw_moment(p, r), WithinRel(q.value, 1e-9));
    }
  }
}

TEST_CASE("central moments, skewness, kurtosis") {
  const GwlParams p{2, 0.5, 1.5};
  CHECK_THAT(variance(p), WithinRel(2.511144256108085, 1e-12));
  CHECK_THAT(skewness(p), WithinRel(0.580495000256066, 1e-11));
  CHECK_THAT(excess_kurtosis(p), WithinRel(0.3737340812294591, 1e-10));
  CHECK_THAT(central_moment(p, 2), WithinRel(variance(p), 1e-13));
  // first central moment vanishes
  CHECK_THAT(central_moment(p, 1), WithinAbs(0.0, 1e-12));
}

TEST_CASE("mean of the log observation") {
  CHECK_THAT(mean_log({2, 1, 1}), WithinRel(0.7561176684318005, 1e-12));
  CHECK_THAT(mean_log({0.5, 0.7, 1.5}), WithinRel(-0.3967761845199943, 1e-12));
  // closed form: (psi(phi) + 1/(lambda+phi))/alpha - log lambda
  const GwlParams p{3.3, 0.4, 2.2};
  const double ref = (digamma(3.3) + 1.0 / (0.4 + 3.3)) / 2.2 - std::log(0.4);
  CHECK_THAT(mean_log(p), WithinRel(ref, 1e-13));
}

TEST_CASE("quantile against reference values and roundtrips") {
  CHECK_THAT(median({2, 1, 1}), WithinRel(2.33025619215600738, 1e-11));
  CHECK_THAT(median({0.5, 0.7, 1.5}), WithinRel(0.947407555222203776, 1e-11));
  CHECK_THAT(median({2, 0.5, 0.1}), WithinRel(16884.2646097322643, 1e-9));
  CHECK_THAT(quantile({4, 1, 0.5}, 0.9), WithinRel(60.5764050025339895, 1e-11));
  for (const GwlParams p : {GwlParams{2, 1, 1}, GwlParams{0.5, 0.7, 1.5},
                            GwlParams{2, 0.5, 0.1}}) {
    for (double q : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999, 1.0 - 1e-9})
      CHECK_THAT(cdf(p, quantile(p, q)), WithinAbs(q, 1e-10));
  }
  CHECK(quantile({2, 1, 1}, 0.0) == 0.0);
  CHECK_THROWS(quantile({2, 1, 1}, 1.0));
  CHECK_THROWS(quantile({2, 1, 1}, -0.1));
}

TEST_CASE("the family is not closed under rescaling") {
  // lambda enters both the rate and the mixture weight lambda/(lambda+phi),
  // so c*T with T ~ (phi, lambda, alpha) is not (phi, lambda/c, alpha);
  // quantiles must NOT scale as 1/lambda
  const double q3 = quantile({2, 3, 0.8}, 0.5);
  const double q1 = quantile({2, 1, 0.8}, 0.5);
  CHECK(std::abs(3.0 * q3 / q1 - 1.0) > 0.05);
  CHECK_THAT(mixture_weight({2, 3, 0.8}), WithinRel(0.6, 1e-14));
  CHECK_THAT(mixture_weight({2, 1, 0.8}), WithinRel(1.0 / 3.0, 1e-14));
}

TEST_CASE("mean residual life") {
  CHECK_THAT(mrl({2, 1, 1}, 0.0), WithinRel(mean({2, 1, 1}), 1e-13));
  CHECK_THAT(mrl({2, 1, 1}, 1.0), WithinRel(2.0, 1e-10));
  CHECK_THAT(mrl({2, 1, 1}, 5.0), WithinRel(1.34883720930233, 1e-10));
  CHECK_THAT(mrl({0.5, 0.7, 1.5}, 0.8), WithinRel(1.0036609386666, 1e-9));
  CHECK_THAT(mrl({4, 1, 0.5}, 10.0), WithinRel(25.3428235840349139, 1e-9));
  // deep in the tail the mrl approaches the reciprocal hazard
  const GwlParams p{2, 1, 1};
  CHECK_THAT(mrl(p, 3000.0), WithinRel(1.0 / hazard(p, 3000.0), 1e-4));
}

TEST_CASE("Shannon entropy matches -E[log f]") {
  CHECK_THAT(shannon_entropy({2, 1, 1}), WithinRel(1.810378832795245, 1e-10));
  CHECK_THAT(shannon_entropy({0.5, 0.7, 1.5}), WithinRel(1.120354257265081, 1e-10));
  CHECK_THAT(shannon_entropy({2, 0.5, 1.5}), WithinRel(1.846327825264354, 1e-10));
  CHECK_THAT(shannon_entropy({3, 2, 0.8}), WithinRel(1.802295973388403, 1e-10));
}

TEST_CASE("Renyi entropy against direct quadrature") {
  CHECK_THAT(renyi_entropy({2, 1, 1}, 2.0), WithinRel(1.637608789400797, 1e-11));
  CHECK_THAT(renyi_entropy({2, 1, 1}, 0.5), WithinRel(2.043312615033285, 1e-11));
  CHECK_THAT(renyi_entropy({0.5, 0.7, 1.5}, 2.0), WithinRel(0.8872003600869349, 1e-11));
  CHECK_THAT(renyi_entropy({2, 0.5, 1.5}, 3.0), WithinRel(1.629347963114925, 1e-11));
  // rho -> 1 recovers Shannon
  CHECK_THAT(renyi_entropy({2, 1, 1}, 1.0 + 1e-7),
             WithinRel(shannon_entropy({2, 1, 1}), 1e-5));
  CHECK_THROWS(renyi_entropy({2, 1, 1}, -0.2));
  // integrability fails when rho(alpha phi - 1) + 1 <= 0
  CHECK_THROWS(renyi_entropy({0.5, 1, 1}, 2.5));
}

TEST_CASE("Lorenz curve") {
  CHECK_THAT(lorenz({2, 1, 1}, 0.3), WithinRel(0.1116052693865861, 1e-10));
  CHECK_THAT(lorenz({2, 1, 1}, 0.8), WithinRel(0.5994382811204546, 1e-10));
  CHECK_THAT(lorenz({0.5, 0.7, 1.5}, 0.5), WithinRel(0.1765665880004573, 1e-10));
  CHECK(lorenz({2, 1, 1}, 1e-9) < 1e-6);
  CHECK_THAT(lorenz({2, 1, 1}, 1.0 - 1e-12), WithinAbs(1.0, 1e-6));
  // convexity: L(p) <= p
  for (double p : {0.1, 0.4, 0.7, 0.95}) CHECK(lorenz({0.5, 0.7, 1.5}, p) < p);
}

TEST_CASE("moment generating function") {
  CHECK_THAT(mgf({2, 1, 1}, 0.3), WithinRel(2.623906705539358, 1e-11));
  CHECK_THAT(mgf({2, 1, 1}, -0.5), WithinRel(0.345679012345679, 1e-11));
  CHECK_THAT(mgf({0.5, 0.7, 1.5}, 0.4), WithinRel(1.736408928113289, 1e-11));
  CHECK_THAT(mgf({0.5, 0.7, 1.5}, -2.0), WithinRel(0.2781282876438192, 1e-11));
  CHECK_THAT(mgf({2, 1, 1}, 0.0), WithinRel(1.0, 1e-14));
  // alpha = 1: series radius is lambda, and beyond it E[exp(sT)] really is
  // infinite for s > 0
  CHECK_THROWS(mgf({2, 1, 1}, 1.0));
  // alpha < 1: no positive argument gives a finite transform
  CHECK_THROWS(mgf({2, 1, 0.5}, 0.1));
  // ... but negative arguments are finite and served by quadrature
  CHECK_THAT(mgf({2, 1, 0.5}, -0.1), WithinRel(0.544938220959186, 1e-9));
}

TEST_CASE("mixture weight and density limit at zero") {
  CHECK_THAT(mixture_weight({2, 1, 1}), WithinRel(1.0 / 3.0, 1e-14));
  // alpha*phi > 1: density vanishes at the origin
  CHECK(pdf_limit_at_zero({2, 1, 1}) == 0.0);
  // alpha*phi < 1: density diverges
  CHECK(std::isinf(pdf_limit_at_zero({0.5, 1, 1})));
  // alpha*phi = 1: finite positive limit agreeing with small-t evaluation
  const double lim = pdf_limit_at_zero({2, 1, 0.5});
  CHECK_THAT(pdf({2, 1, 0.5}, 1e-13), WithinRel(lim, 1e-5));
}

TEST_CASE("hazard shape regimes") {
  CHECK(classify_hazard_shape({2, 1, 1}).shape == HazardShape::increasing);
  CHECK(classify_hazard_shape({0.5, 1, 1}).shape == HazardShape::bathtub);
  CHECK(classify_hazard_shape({1, 1, 0.4}).shape == HazardShape::decreasing);
  CHECK(classify_hazard_shape({4, 1, 0.5}).shape == HazardShape::unimodal);
  CHECK(classify_hazard_shape({1, 0.1169607095, 0.75}).shape ==
        HazardShape::decreasing_increasing_decreasing);
}
