#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "selab/quadrature.hpp"
#include "selab/rng.hpp"
#include "selab/special.hpp"

using namespace selab;

namespace {

// Independent oracle for the normal CDF: Taylor series of erf, summed to
// machine precision. Converges quickly for |x| <= 3.
double erf_series(double x) {
  const double two_over_sqrt_pi = 1.1283791670955125739;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    const double contrib = term / (2.0 * n + 1.0);
    sum += contrib;
    if (std::fabs(contrib) < 1e-18 * std::fabs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

double cdf_oracle(double x) { return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0))); }

}  // namespace

TEST_CASE("std_normal pdf/cdf/quantile basics") {
  CHECK(std_normal(NormalKind::Cdf, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std_normal(NormalKind::Quantile, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std_normal(NormalKind::Pdf, 0.0) ==
        doctest::Approx(0.39894228040143268).epsilon(1e-13));

  const double z = 1.959964;
  CHECK(std::fabs(norm_cdf(z) - cdf_oracle(z)) < 1e-12);
  CHECK(std::fabs(norm_cdf(z) - 0.975) < 1e-6);

  CHECK_THROWS_AS(std_normal(NormalKind::Quantile, 0.0), std::domain_error);
  CHECK_THROWS_AS(std_normal(NormalKind::Quantile, 1.0), std::domain_error);
  CHECK_THROWS_AS(std_normal(NormalKind::Quantile, -0.3), std::domain_error);
}

TEST_CASE("std_normal quantile inverts the cdf") {
  for (double p = 0.001; p < 1.0; p += 0.013) {
    const double x = norm_quantile(p);
    CHECK(std::fabs(norm_cdf(x) - p) < 1e-9);
  }
  // Deep tails against the series oracle via symmetry.
  CHECK(norm_quantile(norm_cdf(-3.0)) == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(norm_quantile(norm_cdf(4.5)) == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("norm_log_sf matches log(1-cdf) and extends to far tails") {
  for (double x : {-2.0, 0.0, 1.5, 5.0, 9.0, 20.0}) {
    // erfc keeps precision where 1-cdf would round to zero
    const double direct = std::log(0.5 * std::erfc(x / std::sqrt(2.0)));
    CHECK(norm_log_sf(x) == doctest::Approx(direct).epsilon(1e-10));
  }
  // Far tail: finite and decreasing.
  CHECK(std::isfinite(norm_log_sf(40.0)));
  CHECK(norm_log_sf(41.0) < norm_log_sf(40.0));
}

TEST_CASE("reg_gamma_lower analytic identities") {
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(reg_gamma_lower(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
  }
  CHECK(reg_gamma_lower(3.7, 0.0) == 0.0);
  CHECK_THROWS_AS(reg_gamma_lower(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_gamma_lower(2.0, -1.0), std::domain_error);
}

TEST_CASE("reg_gamma_lower recurrence consistency") {
  // P(a,x) - P(a+1,x) = x^a e^{-x} / Gamma(a+1), an independent identity.
  for (double a : {0.5, 3.0, 17.5, 240.0, 4000.0}) {
    for (double frac : {0.4, 1.0, 1.7}) {
      const double x = a * frac;
      const double lhs = reg_gamma_lower(a, x) - reg_gamma_lower(a + 1.0, x);
      const double rhs = std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
      CHECK(std::fabs(lhs - rhs) < 1e-11);
    }
  }
}

TEST_CASE("reg_gamma_lower against Monte Carlo gamma CDF") {
  // P(40, 40) vs the empirical CDF of Gamma(40, rate 80) at 0.5.
  const double exact = reg_gamma_lower(40.0, 40.0 * 2.0 * 0.5);
  RngStream rng(981713, 0);
  const int draws = 1000000;
  int below = 0;
  for (int i = 0; i < draws; ++i) {
    // A Gamma(40, rate 80) variate as a sum of 40 exponentials.
    double sum = 0.0;
    for (int k = 0; k < 40; ++k) sum += rng.exponential(80.0);
    if (sum <= 0.5) ++below;
  }
  const double p_hat = static_cast<double>(below) / draws;
  const double se = std::sqrt(p_hat * (1.0 - p_hat) / draws);
  CHECK(std::fabs(exact - p_hat) < 3.0 * se);
}

TEST_CASE("reg_gamma_lower is monotone in x and bounded") {
  RngStream rng(5551, 2);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = 0.2 + 50.0 * rng.uniform01();
    double prev = 0.0;
    for (double x = 0.0; x < 4.0 * a; x += 0.37 * a + 0.01) {
      const double p = reg_gamma_lower(a, x);
      CHECK(p >= prev - 1e-14);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("integrate handles analytic cases") {
  QuadratureSpec spec;
  CHECK(integrate([](double x) { return x; }, 0.0, 1.0, spec) ==
        doctest::Approx(0.5).epsilon(1e-10));

  const double inf = std::numeric_limits<double>::infinity();
  const double total = integrate([](double z) { return norm_pdf(z); }, -inf, inf, spec,
                                 ScaleHint{0.0, 1.0});
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

  const double upper = integrate([](double z) { return norm_pdf(z); }, 1.0, inf, spec,
                                 ScaleHint{0.0, 1.0});
  CHECK(std::fabs(upper - (1.0 - norm_cdf(1.0))) < 1e-8);

  // Indicator handled through a breakpoint.
  const double weighted =
      integrate([](double z) { return norm_pdf(z) * (z > 1.0 ? 1.0 : 0.0); }, -inf, inf,
                spec, ScaleHint{0.0, 1.0}, {1.0});
  CHECK(std::fabs(weighted - (1.0 - norm_cdf(1.0))) < 1e-8);
}

TEST_CASE("integrate is stable under refining the initial subdivision") {
  QuadratureSpec coarse;
  QuadratureSpec fine;
  fine.initial_subdivisions = 2 * std::max(1, coarse.initial_subdivisions);
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  const double a = integrate(f, -4.0, 4.0, coarse);
  const double b = integrate(f, -4.0, 4.0, fine);
  CHECK(std::fabs(a - b) <= coarse.rel_tol * std::fabs(a) + 1e-12);
}

TEST_CASE("integrate reports non-convergence with a partial estimate") {
  QuadratureSpec tight;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-14;
  tight.max_subdivisions = 4;
  bool threw = false;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(std::fabs(x) + 1e-300); }, -1.0, 1.0,
              tight);
  } catch (const QuadratureError& e) {
    threw = true;
    CHECK(std::isfinite(e.partial));
    CHECK(e.partial > 0.0);
  }
  CHECK(threw);

  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0,
                            std::numeric_limits<double>::infinity(), QuadratureSpec{}),
                  std::invalid_argument);
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec bad;
  bad.tail_cut = 4.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = QuadratureSpec{};
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("RngStream replay is bitwise identical") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(42, 7);
  RngStream d(42, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.normal() == d.normal());
    CHECK(c.exponential(2.0) == d.exponential(2.0));
  }
}

TEST_CASE("RngStream distinct streams produce distinct sequences") {
  RngStream a(42, 0);
  RngStream b(42, 1);
  RngStream c(43, 0);
  int equal_ab = 0;
  int equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    if (x == b.next_u64()) ++equal_ab;
    if (x == c.next_u64()) ++equal_ac;
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("RngStream draws have sane ranges and moments") {
  RngStream rng(2024, 3);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / m;
  const double var = sum_sq / m - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(m)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
