#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "renasym/quadrature.hpp"
#include "renasym/specfun.hpp"

using namespace renasym;

namespace {

// Series oracle: erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)),
// good to roundoff for |x| <= 2 with 40 terms.
double erfc_series_oracle(double x) {
  const double sqrt_pi = 1.7724538509055160273;
  double term = x;
  double sum = 0.0;
  for (int n = 0; n < 40; ++n) {
    sum += term / (2 * n + 1);
    term *= -x * x / (n + 1);
  }
  return 1.0 - 2.0 / sqrt_pi * sum;
}

// Asymptotic oracle: erfcx(x) ~ 1/(x sqrt(pi)) sum (-1)^n (2n-1)!! / (2x^2)^n.
double erfcx_asymptotic_oracle(double x) {
  const double sqrt_pi = 1.7724538509055160273;
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < 12; ++n) {
    sum += term;
    term *= -(2 * n + 1) / (2.0 * x * x);
  }
  return sum / (x * sqrt_pi);
}

}  // namespace

TEST_CASE("erfc basic values") {
  CHECK(specfun::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // reflection identity
  for (double x : {0.3, 1.0, 2.5, 7.0}) {
    CHECK(specfun::erfc(x) + specfun::erfc(-x) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }
  // series oracle and its frozen value
  const double oracle = erfc_series_oracle(1.0);
  CHECK(oracle == doctest::Approx(0.15729920705028513).epsilon(1e-14));
  CHECK(specfun::erfc(1.0) == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(specfun::erfc(0.25) ==
        doctest::Approx(erfc_series_oracle(0.25)).epsilon(1e-13));
  CHECK(specfun::erfc(1.75) ==
        doctest::Approx(erfc_series_oracle(1.75)).epsilon(1e-13));
}

TEST_CASE("erfc monotone and bounded") {
  double prev = 2.0;
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double v = specfun::erfc(x);
    CHECK(v > 0.0);
    CHECK(v < 2.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("erfcx values and stability") {
  CHECK(specfun::erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double oracle10 = erfcx_asymptotic_oracle(10.0);
  CHECK(oracle10 == doctest::Approx(0.056140992743822586).epsilon(1e-12));
  CHECK(specfun::erfcx(10.0) == doctest::Approx(oracle10).epsilon(1e-10));
  // cross-check with erfc at x = 1
  CHECK(specfun::erfcx(1.0) ==
        doctest::Approx(std::exp(1.0) * specfun::erfc(1.0)).epsilon(1e-13));
  // large arguments stay finite and positive
  CHECK(specfun::erfcx(1e4) > 0.0);
  CHECK(std::isfinite(specfun::erfcx(1e4)));
  CHECK_THROWS_AS((void)specfun::erfcx(-27.0), std::overflow_error);
}

TEST_CASE("erfcx exp(-x^2) equals erfc where representable") {
  for (double x = -5.0; x <= 26.0; x += 0.5) {
    const double lhs = specfun::erfcx(x) * std::exp(-x * x);
    const double rhs = specfun::erfc(x);
    if (rhs > 1e-300)
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("log variants are finite everywhere") {
  for (double x : {-40.0, -27.0, -5.0, 0.0, 5.0, 30.0, 200.0}) {
    CHECK(std::isfinite(specfun::log_erfc(x)));
    CHECK(std::isfinite(specfun::log_erfcx(x)));
  }
  // log_erfcx(-30) ~ 900 + log 2
  CHECK(specfun::log_erfcx(-30.0) ==
        doctest::Approx(900.0 + std::log(2.0)).epsilon(1e-6));
  // agreement with direct logs in the safe range
  for (double x : {-3.0, -0.5, 0.7, 4.0, 20.0}) {
    CHECK(specfun::log_erfc(x) ==
          doctest::Approx(std::log(specfun::erfc(x))).epsilon(1e-12));
    if (x > -26.0)
      CHECK(specfun::log_erfcx(x) ==
            doctest::Approx(std::log(specfun::erfcx(x))).epsilon(1e-12));
  }
}

TEST_CASE("elliptic integrals: degenerate and oracle values") {
  const double half_pi = 1.5707963267948966;
  const auto p0 = specfun::elliptic_KE(0.0);
  CHECK(p0.K == doctest::Approx(half_pi).epsilon(1e-15));
  CHECK(p0.E == doctest::Approx(half_pi).epsilon(1e-15));

  // defining integral, adaptive quadrature oracle at k = 1/sqrt(2)
  const double k = 1.0 / std::sqrt(2.0);
  const auto q = quadrature::integrate_interval(
      [k](double v) {
        const double s = std::sin(v);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
      },
      0.0, half_pi, 1e-13);
  const auto p = specfun::elliptic_KE(k);
  CHECK(p.K == doctest::Approx(q.value).epsilon(1e-12));
  CHECK(p.K == doctest::Approx(1.8540746773013719).epsilon(1e-13));
  CHECK(p.E == doctest::Approx(1.3506438810476755).epsilon(1e-13));

  const auto p1 = specfun::elliptic_KE(1.0, true);
  CHECK(p1.E == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isinf(p1.K));
  CHECK_THROWS_AS((void)specfun::elliptic_KE(1.0), std::domain_error);
  CHECK_THROWS_AS((void)specfun::elliptic_KE(1.5), std::domain_error);
  CHECK_THROWS_AS((void)specfun::elliptic_KE(-0.1), std::domain_error);
}

TEST_CASE("Legendre relation across a log-spaced modulus grid") {
  const double half_pi = 1.5707963267948966;
  for (int i = 0; i <= 24; ++i) {
    const double k = std::pow(10.0, -6.0 + 5.9 * i / 24.0);  // up to ~0.79
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const auto a = specfun::elliptic_KE(k);
    const auto b = specfun::elliptic_KE(kp);
    const double res = a.E * b.K + b.E * a.K - a.K * b.K - half_pi;
    CHECK(std::fabs(res) < 1e-10);
  }
}

TEST_CASE("elliptic monotonicity in the modulus") {
  double prevK = 0.0, prevE = 10.0;
  for (double k = 0.0; k < 0.999; k += 0.037) {
    const auto p = specfun::elliptic_KE(k);
    CHECK(p.K > prevK);
    CHECK(p.E < prevE);
    CHECK(p.K >= 1.5707963267948966 - 1e-15);
    CHECK(p.E <= 1.5707963267948966 + 1e-15);
    prevK = p.K;
    prevE = p.E;
  }
}

TEST_CASE("jacobi_dn: degenerate moduli") {
  for (double u = -5.0; u <= 5.0; u += 0.7) {
    CHECK(specfun::jacobi_dn(u, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::jacobi_dn(u, 1.0) ==
          doctest::Approx(1.0 / std::cosh(u)).epsilon(1e-12));
  }
}

TEST_CASE("jacobi_dn against the defining-integral inversion oracle") {
  // u = int_0^phi dv / sqrt(1 - k^2 sin^2 v); dn = sqrt(1 - k^2 sin^2 phi).
  const double u = 0.7, k = 0.6;
  auto incomplete = [k](double phi) {
    return quadrature::integrate_interval(
               [k](double v) {
                 const double s = std::sin(v);
                 return 1.0 / std::sqrt(1.0 - k * k * s * s);
               },
               0.0, phi, 1e-13)
        .value;
  };
  const double phi = specfun::bracket_root(
      [&](double p) { return incomplete(p) - u; }, 1e-8, 1.5707, 1e-13);
  const double s = std::sin(phi);
  const double oracle = std::sqrt(1.0 - k * k * s * s);
  CHECK(oracle == doctest::Approx(0.92582589832868325).epsilon(1e-10));
  CHECK(specfun::jacobi_dn(u, k) == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("jacobi_dn: periodicity and range") {
  for (double k : {0.3, 0.6, 0.9}) {
    const double period = 2.0 * specfun::elliptic_KE(k).K;
    const double kp = std::sqrt(1.0 - k * k);
    for (double u = -5.0; u <= 5.0; u += 0.31) {
      const double a = specfun::jacobi_dn(u, k);
      const double b = specfun::jacobi_dn(u + period, k);
      CHECK(std::fabs(a - b) < 1e-10);
      CHECK(a >= kp - 1e-12);
      CHECK(a <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("bracket_root basics") {
  const auto id = [](double x) { return x - 0.5; };
  CHECK(specfun::bracket_root(id, 0.0, 1.0, 1e-14) ==
        doctest::Approx(0.5).epsilon(1e-12));
  const auto sq = [](double x) { return x * x - 2.0; };
  CHECK(specfun::bracket_root(sq, 1.0, 2.0, 1e-14) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(
      (void)specfun::bracket_root([](double x) { return x + 3.0; }, 0.0, 1.0,
                                  1e-12),
      std::invalid_argument);
  // a root at an endpoint is returned directly
  CHECK(specfun::bracket_root([](double x) { return x; }, 0.0, 1.0, 1e-12) ==
        0.0);
  // stiff function: steep exponential crossing
  const auto steep = [](double x) { return std::exp(40.0 * x) - 1.0; };
  CHECK(std::fabs(specfun::bracket_root(steep, -1.0, 2.0, 1e-14)) < 1e-12);
}
