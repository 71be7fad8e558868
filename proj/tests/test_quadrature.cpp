#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "renasym/profiles.hpp"
#include "renasym/quadrature.hpp"
#include "renasym/specfun.hpp"

using namespace renasym;
using quadrature::integrate_interval;
using quadrature::integrate_line;
using quadrature::TailCertificate;

TEST_CASE("interval: elementary integrals") {
  const double pi = 3.14159265358979323846;
  const auto a = integrate_interval([](double s) { return std::sin(s); }, 0.0,
                                    pi, 1e-12);
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.err_est < 1e-9);

  const auto b =
      integrate_interval([](double s) { return s; }, -1.0, 1.0, 1e-12);
  CHECK(std::fabs(b.value) < 1e-14);
}

TEST_CASE("interval: matches the elliptic module on the defining integral") {
  // modulus 0.5, integrand 1/sqrt(1 - 0.25 sin^2 v)
  const auto q = integrate_interval(
      [](double v) {
        const double s = std::sin(v);
        return 1.0 / std::sqrt(1.0 - 0.25 * s * s);
      },
      0.0, 1.5707963267948966, 1e-13);
  CHECK(q.value == doctest::Approx(1.6857503548125960).epsilon(1e-12));
  CHECK(q.value ==
        doctest::Approx(specfun::elliptic_KE(0.5).K).epsilon(1e-12));
}

TEST_CASE("interval: additivity") {
  auto f = [](double s) { return std::exp(-s * s) * std::sin(3.0 * s + 0.4); };
  const double tol = 1e-10;
  const double whole = integrate_interval(f, -1.0, 2.0, tol).value;
  const double split = integrate_interval(f, -1.0, 0.3, tol).value +
                       integrate_interval(f, 0.3, 2.0, tol).value;
  CHECK(std::fabs(whole - split) < 3.0 * tol * (1.0 + std::fabs(whole)));
}

TEST_CASE("interval: panel budget error") {
  // An oscillatory integrand with a tiny budget must fail loudly.
  CHECK_THROWS_AS((void)integrate_interval(
                      [](double s) { return std::sin(200.0 * s); }, 0.0, 20.0,
                      1e-12, {}, 4),
                  std::runtime_error);
}

TEST_CASE("line: gaussian and odd integrands") {
  TailCertificate gauss_cert;
  gauss_cert.left_order = 6.0;
  gauss_cert.right_order = 6.0;
  gauss_cert.threshold = 3.0;
  gauss_cert.constant = std::exp(-9.0) * std::pow(3.0, 6.0) * 1.01;

  const auto g = integrate_line([](double s) { return std::exp(-s * s); },
                                gauss_cert, 1e-11);
  CHECK(g.value == doctest::Approx(std::sqrt(3.14159265358979323846))
                       .epsilon(1e-10));

  const auto odd = integrate_line(
      [](double s) { return s * std::exp(-s * s); }, gauss_cert, 1e-11);
  CHECK(std::fabs(odd.value) < 1e-11);
}

TEST_CASE("line: truncation soundness against a wide interval") {
  auto f = [](double s) { return 1.0 / (1.0 + s * s * s * s); };
  TailCertificate cert{4.0, 4.0, 1.05, 2.0};
  const auto line = integrate_line(f, cert, 1e-10);
  const double wide =
      integrate_interval(f, 2.0 * line.trunc_left, 2.0 * line.trunc_right,
                         1e-12, {line.trunc_left, line.trunc_right})
          .value;
  CHECK(std::fabs(line.value - wide) < 2e-9 * std::fabs(wide) + 1e-12);
}

TEST_CASE("line: certificate violation is flagged") {
  // Claimed quartic decay for a quadratically decaying integrand.
  auto f = [](double s) { return 1.0 / (1.0 + s * s); };
  TailCertificate lying{4.0, 4.0, 1.0, 2.0};
  const auto r = integrate_line(f, lying, 1e-8);
  CHECK(r.certificate_warning);
  TailCertificate honest{2.0, 2.0, 1.05, 2.0};
  const auto ok = integrate_line(f, honest, 1e-8);
  CHECK_FALSE(ok.certificate_warning);
  CHECK(ok.value == doctest::Approx(3.14159265358979323846).epsilon(1e-7));
}

TEST_CASE("line: invalid certificate is rejected") {
  TailCertificate bad;  // orders below 2
  CHECK_THROWS_AS(
      (void)integrate_line([](double) { return 0.0; }, bad, 1e-10),
      std::invalid_argument);
}

namespace {

double truncated_moment(const std::function<double(double)>& f, double A,
                        bool weighted) {
  return integrate_interval(
             [&](double s) { return weighted ? s * f(s) : f(s); }, -A, A,
             1e-13, {0.0})
      .value;
}

}  // namespace

TEST_CASE("proof moments: exponential-tail ramp") {
  const auto p = profiles::make_ramp_profile(profiles::RampKind::kBurgersT1, 1.0);
  double prev_d3 = 1e9, prev_sd3 = 1e9;
  for (double eps : {0.1, 0.05, 0.025}) {
    const double A = 1.0 / std::sqrt(eps);
    const double m0 = truncated_moment(p.d3, A, false);
    const double m1 = truncated_moment(p.d3, A, true);
    CHECK(std::fabs(m0) < 1e-10);  // odd integrand, exponential tails
    CHECK(std::fabs(m1 + 1.0) < prev_sd3);
    prev_sd3 = std::fabs(m1 + 1.0) + 1e-18;
    prev_d3 = std::fabs(m0);
    // second-derivative analogues
    const double q0 = truncated_moment(p.d2, A, false);
    const double q1 = truncated_moment(p.d2, A, true);
    CHECK(std::fabs(q0 - 1.0) < 1e-2);
    CHECK(std::fabs(q1) < 1e-10);  // even d2, odd integrand
  }
  (void)prev_d3;
}

TEST_CASE("proof moments: power-tail profile scales exactly") {
  // Tails c_plus/s^2 and -s + c_minus/s^2 outside |s| >= S give
  //   int_{|s|<A} d3      = 6 (c_plus - c_minus) / A^4
  //   int_{|s|<A} s d3    = -1 + 8 (c_plus + c_minus) / A^3
  //   int_{|s|<A} d2      = 1 - 2 (c_plus + c_minus) / A^3
  //   int_{|s|<A} s d2    = 3 (c_minus - c_plus) / A^2
  const double cp = 1.0, cm = 2.0;
  const auto p = profiles::make_power_tail_profile(cp, cm, 2.0);
  for (double eps : {0.1, 0.05, 0.025}) {
    const double A = 1.0 / std::sqrt(eps);
    const double m0 = truncated_moment(p.d3, A, false);
    const double m1 = truncated_moment(p.d3, A, true);
    const double q0 = truncated_moment(p.d2, A, false);
    const double q1 = truncated_moment(p.d2, A, true);
    CHECK(m0 == doctest::Approx(6.0 * (cp - cm) * eps * eps).epsilon(1e-8));
    CHECK(m1 == doctest::Approx(-1.0 + 8.0 * (cp + cm) * std::pow(eps, 1.5))
                    .epsilon(1e-10));
    CHECK(q0 == doctest::Approx(1.0 - 2.0 * (cp + cm) * std::pow(eps, 1.5))
                    .epsilon(1e-10));
    CHECK(q1 == doctest::Approx(3.0 * (cm - cp) * eps).epsilon(1e-10));
  }
}

TEST_CASE("line: third-derivative ramp integral telescopes to zero") {
  const auto p = profiles::make_ramp_profile(profiles::RampKind::kBurgersT1, 1.0);
  const auto r = integrate_line(p.d3, p.d3_tail, 1e-11);
  CHECK(std::fabs(r.value) < 1e-11);
}
