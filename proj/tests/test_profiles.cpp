#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "renasym/profiles.hpp"
#include "renasym/quadrature.hpp"

using namespace renasym;
using profiles::InitialProfile;

namespace {

void check_derivative_chain(const InitialProfile& p, double lo, double hi) {
  const double h = 1e-4;
  for (int i = 0; i < 50; ++i) {
    const double s = lo + (hi - lo) * i / 49.0;
    const double fd1 = (p.value(s + h) - p.value(s - h)) / (2.0 * h);
    const double fd2 = (p.d1(s + h) - p.d1(s - h)) / (2.0 * h);
    const double fd3 = (p.d2(s + h) - p.d2(s - h)) / (2.0 * h);
    CHECK(std::fabs(fd1 - p.d1(s)) < 1e-6 * (1.0 + std::fabs(p.d1(s))));
    CHECK(std::fabs(fd2 - p.d2(s)) < 1e-6 * (1.0 + std::fabs(p.d2(s))));
    CHECK(std::fabs(fd3 - p.d3(s)) < 1e-6 * (1.0 + std::fabs(p.d3(s))));
  }
}

void check_certificates(const InitialProfile& p, bool ramp) {
  auto probe = [&](const std::function<double(double)>& f,
                   const quadrature::TailCertificate& c, bool deviation) {
    for (int i = 1; i <= 20; ++i) {
      const double s = c.threshold * std::pow(50.0, i / 20.0);
      for (double sign : {1.0, -1.0}) {
        double v = f(sign * s);
        if (deviation && sign < 0.0) v += 1.0;  // d1 tail is against -Theta
        const double order = sign > 0 ? c.right_order : c.left_order;
        CHECK(std::fabs(v) <= c.constant * std::pow(s, -order) * (1 + 1e-9));
      }
    }
  };
  probe(p.d1, p.d1_tail, ramp);
  probe(p.d2, p.d2_tail, false);
  probe(p.d3, p.d3_tail, false);
}

}  // namespace

TEST_CASE("smoothed step: construction and limits") {
  const auto p = profiles::make_smoothed_step(1.0, -1.0, 1.0);
  CHECK(p.value(0.0) == doctest::Approx(0.0).epsilon(1e-15));  // midpoint
  CHECK(std::fabs(p.value(1e6) - p.limit_plus) < 1e-6);
  CHECK(std::fabs(p.value(-1e6) - p.limit_minus) < 1e-6);
  check_derivative_chain(p, -10.0, 10.0);
  check_certificates(p, false);

  // int d1 = limit_plus - limit_minus
  const auto q = quadrature::integrate_line(p.d1, p.d1_tail, 1e-11);
  CHECK(q.value == doctest::Approx(-2.0).epsilon(1e-10));

  // antiderivative differentiates back to the value
  for (double s : {-3.0, -0.4, 0.0, 1.3, 6.0}) {
    const double h = 1e-5;
    const double fd =
        (p.antiderivative(s + h) - p.antiderivative(s - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(p.value(s)).epsilon(1e-8));
  }
  CHECK(p.antiderivative(0.0) == 0.0);

  CHECK_THROWS_AS((void)profiles::make_smoothed_step(1.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)profiles::make_smoothed_step(1.0, 0.0, -2.0),
                  std::invalid_argument);
}

TEST_CASE("softplus ramp: normal form") {
  const auto p = profiles::make_ramp_profile(profiles::RampKind::kKdvT2, 1.0);
  CHECK(p.value(0.0) == doctest::Approx(0.34657359027997265).epsilon(1e-14));
  CHECK(std::fabs(p.value(-30.0) - 30.0) < 1e-12);  // value(s) -> -s
  CHECK(std::fabs(p.value(40.0)) < 1e-12);
  check_derivative_chain(p, -10.0, 10.0);
  check_certificates(p, true);

  // int s d3 = -1 over the whole line (quadrature oracle)
  const auto m = quadrature::integrate_line(
      [&](double s) { return s * p.d3(s); },
      p.d3_tail.with_linear_growth(0.0, 1.0), 1e-11);
  CHECK(m.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("power-tail profile: C3 join and exact tails") {
  const double cp = 1.0, cm = 2.0, S = 2.0;
  const auto p = profiles::make_power_tail_profile(cp, cm, S);
  // continuity of value..d3 across the joins
  for (double s0 : {S, -S}) {
    const double in = s0 > 0 ? s0 - 1e-7 : s0 + 1e-7;
    const double out = s0 > 0 ? s0 + 1e-7 : s0 - 1e-7;
    CHECK(std::fabs(p.value(in) - p.value(out)) < 1e-6);
    CHECK(std::fabs(p.d1(in) - p.d1(out)) < 1e-5);
    CHECK(std::fabs(p.d2(in) - p.d2(out)) < 1e-4);
    CHECK(std::fabs(p.d3(in) - p.d3(out)) < 1e-3);
  }
  CHECK(p.value(10.0) == doctest::Approx(cp / 100.0).epsilon(1e-14));
  CHECK(p.value(-10.0) == doctest::Approx(10.0 + cm / 100.0).epsilon(1e-14));
  check_derivative_chain(p, -1.9, 1.9);
  check_certificates(p, true);
  // ramp deviation decays
  CHECK(std::fabs(p.value(-1e6) + (-1e6)) < 1e-6);

  // antiderivative consistency across all three pieces
  for (double s : {-5.0, -2.0, -0.7, 0.9, 2.0, 7.0}) {
    const double h = 1e-5;
    const double fd =
        (p.antiderivative(s + h) - p.antiderivative(s - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(p.value(s)).epsilon(1e-7));
  }
}

TEST_CASE("hypothesis checks accept admissible families") {
  const auto ramp = profiles::make_ramp_profile(profiles::RampKind::kBurgersT1, 1.0);
  CHECK(profiles::verify_hypotheses(ramp, profiles::Hypotheses::kT1).pass);
  CHECK(profiles::verify_hypotheses(ramp, profiles::Hypotheses::kT2).pass);

  const auto power = profiles::make_power_tail_profile();
  CHECK(profiles::verify_hypotheses(power, profiles::Hypotheses::kT1).pass);
  CHECK(profiles::verify_hypotheses(power, profiles::Hypotheses::kT2).pass);

  const auto step = profiles::make_smoothed_step(1.0, 0.0, 1.0);
  CHECK(profiles::verify_hypotheses(step, profiles::Hypotheses::kLargeGradient)
            .pass);
}

TEST_CASE("hypothesis checks flag the slow-tail profile") {
  const auto slow = profiles::make_slow_tail_profile(1.0);
  const auto t1 = profiles::verify_hypotheses(slow, profiles::Hypotheses::kT1);
  CHECK_FALSE(t1.pass);
  const auto t2 = profiles::verify_hypotheses(slow, profiles::Hypotheses::kT2);
  CHECK_FALSE(t2.pass);
}
