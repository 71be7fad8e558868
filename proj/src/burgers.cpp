#include "renasym/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renasym/quadrature.hpp"
#include "renasym/specfun.hpp"

namespace renasym::burgers {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_psi_time(double t) {
  if (!(t > 0.0) || t >= 1.0 - 1e-9)
    throw std::domain_error("psi: requires 0 < t < 1 - 1e-9");
}

// |log Psi(xi, t)| <= alpha(t) + beta(t) xi^2.
void log_psi_growth(double t, double* alpha, double* beta) {
  *beta = 0.25 / (1.0 - t);
  const double up =
      std::log(2.0 * std::sqrt(kPi * t / (1.0 - t)) + 2.0 * std::sqrt(kPi * t));
  const double low = 0.5 * std::log(kPi * t);
  *alpha = std::fabs(up) + std::fabs(low);
}

}  // namespace

AsymptoticParams AsymptoticParams::large_gradient(double epsilon, double rho) {
  if (!(epsilon > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("AsymptoticParams: epsilon, rho must be > 0");
  return {epsilon, rho, Regime::kLargeGradient};
}

AsymptoticParams AsymptoticParams::weak_discontinuity(double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("AsymptoticParams: epsilon must be > 0");
  return {epsilon, 0.0, Regime::kWeakDiscontinuity};
}

double AsymptoticParams::mu() const {
  return regime == Regime::kLargeGradient ? rho / epsilon
                                          : rho / std::sqrt(epsilon);
}

PsiValue psi(double x, double t) {
  check_psi_time(t);
  const double omt = 1.0 - t;
  const double z1 = x / (2.0 * std::sqrt(t * omt));
  const double z2 = -x / (2.0 * std::sqrt(t));

  const double log_i1 = 0.5 * std::log(kPi * t / omt) +
                        x * x / (4.0 * omt) + specfun::log_erfc(z1);
  const double log_i2 = 0.5 * std::log(kPi * t) + specfun::log_erfc(z2);

  const double m = std::max(log_i1, log_i2);
  const double i1 = std::exp(log_i1 - m);
  const double i2 = std::exp(log_i2 - m);
  const double psin = i1 + i2;

  const double gexp = -x * x / (4.0 * t) - m;
  const double g = gexp > -745.0 ? std::exp(gexp) : 0.0;

  PsiValue v;
  v.log_psi = m + std::log(psin);
  v.psi_x_over_psi =
      (x / (2.0 * omt) * i1 - g * t / omt) / psin;
  v.psi_xx_over_psi =
      (i1 * (0.5 / omt + x * x / (4.0 * omt * omt)) -
       g * x * t / (2.0 * omt * omt)) /
      psin;
  return v;
}

double u0_weak(double x, double t) { return -2.0 * psi(x, t).psi_x_over_psi; }

double renorm_weak_burgers(const InitialProfile& p, double x, double t,
                           double eps, double rel_tol) {
  check_psi_time(t);
  if (!(eps > 0.0))
    throw std::invalid_argument("renorm_weak_burgers: eps must be > 0");

  auto f = [&](double s) { return p.d3(s) * psi(x - eps * s, t).log_psi; };

  double alpha, beta;
  log_psi_growth(t, &alpha, &beta);
  // (x - eps s)^2 <= 2 x^2 + 2 eps^2 s^2
  const auto cert = p.d3_tail.with_polynomial_growth(
      alpha + 2.0 * beta * x * x, 2.0 * beta * eps * eps);

  const auto r = quadrature::integrate_line(f, cert, rel_tol);
  return -2.0 / eps * r.value;
}

double large_gradient_kernel(double s, double x, double t, double eps,
                             double rho, double lam_minus, double lam_plus) {
  const double den = 2.0 * std::sqrt(eps * t);
  const double bp = (lam_plus * t - x + rho * s) / den;
  const double bm = (x - lam_minus * t - rho * s) / den;
  const double lp = specfun::log_erfcx(bp);
  const double lm = specfun::log_erfcx(bm);
  const double m = std::max(lp, lm);
  const double wp = std::exp(lp - m);
  const double wm = std::exp(lm - m);
  return (lam_plus * wp + lam_minus * wm) / (wp + wm);
}

double large_gradient_burgers(const InitialProfile& p, double x, double t,
                              double eps, double rho, double rel_tol) {
  if (p.kind != profiles::ProfileKind::kStep)
    throw std::invalid_argument(
        "large_gradient_burgers: needs a step profile with finite limits");
  const double lm = p.limit_minus, lp = p.limit_plus;
  if (lm == lp)
    throw std::invalid_argument("large_gradient_burgers: degenerate limits");
  if (!(eps > 0.0) || !(rho > 0.0) || !(t > 0.0))
    throw std::invalid_argument(
        "large_gradient_burgers: eps, rho, t must be > 0");

  const double jump = lp - lm;
  auto f = [&](double s) {
    return large_gradient_kernel(s, x, t, eps, rho, lm, lp) * p.d1(s) / jump;
  };
  const auto cert = p.d1_tail.scaled(
      std::max(std::fabs(lm), std::fabs(lp)) / std::fabs(jump));
  return quadrature::integrate_line(f, cert, rel_tol).value;
}

CHDatum ch_constant(double c) {
  return {[c](double) { return c; }, [c](double y) { return c * y; },
          "constant"};
}

CHDatum ch_step(double lambda_minus, double lambda_plus) {
  return {[=](double y) { return y < 0.0 ? lambda_minus : lambda_plus; },
          [=](double y) { return (y < 0.0 ? lambda_minus : lambda_plus) * y; },
          "step"};
}

CHDatum ch_ramp_weak(double trunc) {
  auto u = [trunc](double y) {
    return (y < 0.0 && y >= -trunc) ? -y : 0.0;
  };
  auto pot = [trunc](double y) {
    if (y >= 0.0) return 0.0;
    const double yc = std::max(y, -trunc);
    return -0.5 * yc * yc;
  };
  return {u, pot, "ramp_weak"};
}

CHDatum ch_from_profile(const InitialProfile& p, double rho) {
  if (!p.antiderivative)
    throw std::invalid_argument(
        "ch_from_profile: profile has no closed-form antiderivative");
  if (!(rho > 0.0))
    throw std::invalid_argument("ch_from_profile: rho must be > 0");
  auto val = p.value;
  auto anti = p.antiderivative;
  return {[val, rho](double y) { return val(y / rho); },
          [anti, rho](double y) { return rho * anti(y / rho); },
          p.family + "_scaled"};
}

double cole_hopf_reference(const CHDatum& datum, double x, double t,
                           double eps, double rel_tol) {
  if (!(t > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("cole_hopf_reference: t, eps must be > 0");

  auto G = [&](double y) {
    const double d = x - y;
    return datum.potential(y) + d * d / (2.0 * t);
  };

  // Scale of the datum near the relevant region, for the scan radius.
  double umax = 0.0;
  for (int i = -16; i <= 16; ++i) {
    const double y = x + i * (1.0 + std::fabs(x) + 4.0 * t) / 16.0;
    umax = std::max(umax, std::fabs(datum.u(y)));
  }
  const double R =
      5.0 + t * (umax + 1.0) + 20.0 * std::sqrt(eps * t) + 0.5 * std::fabs(x);

  double ystar = x, gmin = G(x);
  const int n_scan = 4000;
  for (int i = 0; i <= n_scan; ++i) {
    const double y = x - R + 2.0 * R * i / n_scan;
    const double g = G(y);
    if (g < gmin) {
      gmin = g;
      ystar = y;
    }
  }
  // Local golden-section refinement around the scan minimizer.
  {
    double a = ystar - 2.0 * R / n_scan, b = ystar + 2.0 * R / n_scan;
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 60; ++it) {
      if (G(c) < G(d)) b = d; else a = c;
      c = b - gr * (b - a);
      d = a + gr * (b - a);
    }
    ystar = 0.5 * (a + b);
    gmin = std::min(gmin, G(ystar));
  }

  const double depth = 2.0 * eps * 45.0;  // integrand below ~1e-19 outside
  auto march = [&](double dir) {
    double step = std::max(1e-3, std::sqrt(2.0 * eps * t));
    double y = ystar;
    while (G(y + dir * step) - gmin < depth) {
      y += dir * step;
      step *= 1.5;
      if (std::fabs(y) > 1e7)
        throw std::runtime_error(
            "cole_hopf_reference: integrand window does not close");
    }
    return y + dir * step;
  };
  const double ylo = march(-1.0), yhi = march(1.0);

  for (int attempt = 0;; ++attempt) {
    bool exp_positive = false;
    auto weight = [&](double y) {
      const double e = -(G(y) - gmin) / (2.0 * eps);
      if (e > 1e-9) exp_positive = true;
      return e > -745.0 ? std::exp(e) : 0.0;
    };
    auto num = quadrature::integrate_interval(
        [&](double y) { return (x - y) / t * weight(y); }, ylo, yhi, rel_tol,
        {ystar});
    auto den = quadrature::integrate_interval(weight, ylo, yhi, rel_tol,
                                              {ystar});
    if (!exp_positive) return num.value / den.value;
    if (attempt >= 1)
      throw std::overflow_error(
          "cole_hopf_reference: saddle normalization insufficient");
    // A lower potential value was met inside the window; renormalize.
    double g2 = gmin;
    for (int i = 0; i <= n_scan; ++i)
      g2 = std::min(g2, G(ylo + (yhi - ylo) * i / n_scan));
    gmin = g2;
  }
}

}  // namespace renasym::burgers
