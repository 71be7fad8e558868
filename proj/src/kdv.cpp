#include "renasym/kdv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renasym/quadrature.hpp"
#include "renasym/specfun.hpp"

namespace renasym::kdv {

namespace {
constexpr double kSqrt6 = 2.449489742783178098;
constexpr double kEdgeTol = 1e-10;

double omega_of(double y, double sigma) {
  return (y - (1.0 + sigma * sigma) / 3.0) / kSqrt6;
}
}  // namespace

double whitham_residual(double sigma, double y) {
  const auto ke = specfun::elliptic_KE(sigma);
  const double s2 = sigma * sigma;
  const double denom = ke.E - (1.0 - s2) * ke.K;
  return 1.0 + s2 - 2.0 * s2 * (1.0 - s2) * ke.K / denom - 3.0 * y;
}

WhithamPoint sigma_of_y(double y) {
  if (y < -1.0 - 1e-12 || y > 2.0 / 3.0 + 1e-12)
    throw std::domain_error("sigma_of_y: y must lie in [-1, 2/3]");
  WhithamPoint w;
  w.y = y;
  if (y <= -1.0 + kEdgeTol) {
    w.sigma = 0.0;
  } else if (y >= 2.0 / 3.0 - kEdgeTol) {
    w.sigma = 1.0;
  } else {
    w.sigma = specfun::bracket_root(
        [y](double s) { return whitham_residual(s, y); }, 1e-14, 1.0 - 1e-14,
        1e-15);
  }
  w.omega = omega_of(y, w.sigma);
  return w;
}

double gp_dsw_Z(double x, double t, double a, double eps) {
  if (!(a > 0.0) || !(t > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("gp_dsw_Z: a, t, eps must be > 0");
  const double y = x / (a * t);
  if (y <= -1.0) return a;
  if (y >= 2.0 / 3.0) return 0.0;
  const WhithamPoint w = sigma_of_y(y);
  const double u = std::pow(a, 1.5) * t * w.omega / std::sqrt(eps);
  const double dn = specfun::jacobi_dn(u, w.sigma);
  return a * (2.0 * dn * dn + w.sigma * w.sigma - 1.0);
}

double gp_renormalized(const InitialProfile& p, double x, double t, double eps,
                       double rho, double rel_tol) {
  if (p.kind != profiles::ProfileKind::kStep)
    throw std::invalid_argument("gp_renormalized: needs a step profile");
  const double a = p.limit_minus;
  if (!(a > 0.0) || std::fabs(p.limit_plus) > 1e-12)
    throw std::invalid_argument(
        "gp_renormalized: profile limits must be (a > 0, 0)");
  if (!(t > 0.0) || !(eps > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("gp_renormalized: t, eps, rho must be > 0");

  const double at = a * t;
  const double term1 =
      2.0 * p.value((x + at) / rho) - p.value((x - 2.0 * at / 3.0) / rho);

  // Pre-subdivision: enough panels that each dn^2 period in y carries >= 10
  // nodes (a 15-node rule per panel), plus knots at the d1 spike.
  const double omega_span = std::fabs(omega_of(-1.0, 0.0));
  const double periods =
      std::pow(a, 1.5) * t * omega_span / (std::sqrt(eps) * 3.14159265358979);
  int panels = std::max(16, static_cast<int>(std::ceil(periods * 1.5)));
  std::vector<double> knots;
  for (int i = 1; i < panels; ++i)
    knots.push_back(-1.0 + (5.0 / 3.0) * i / panels);
  const double y_spike = x / at;
  if (y_spike > -1.0 && y_spike < 2.0 / 3.0) {
    const double hw = 4.0 * rho * p.width / at;
    for (double d : {-2.0 * hw, -hw, 0.0, hw, 2.0 * hw}) {
      const double k = y_spike + d;
      if (k > -1.0 && k < 2.0 / 3.0) knots.push_back(k);
    }
  }

  auto f = [&](double y) {
    const WhithamPoint w = sigma_of_y(y);
    const double u = std::pow(a, 1.5) * t * w.omega / std::sqrt(eps);
    const double dn = specfun::jacobi_dn(u, w.sigma);
    return p.d1((x - at * y) / rho) *
           (2.0 * dn * dn + w.sigma * w.sigma);
  };
  const auto integral =
      quadrature::integrate_interval(f, -1.0, 2.0 / 3.0, rel_tol, knots, 8000);
  return term1 - (at / rho) * integral.value;
}

double renorm_weak_kdv(const InitialProfile& p, const PhiField& phi, double x,
                       double t, double eps, double rel_tol,
                       bool extend_background) {
  if (!(eps > 0.0))
    throw std::invalid_argument("renorm_weak_kdv: eps must be > 0");
  if (t < 0.0 || t > phi.delta() + 1e-12)
    throw std::out_of_range("renorm_weak_kdv: t outside the stored horizon");

  const double W = phi.certified_half_width();
  // s-range whose lookups stay on the certified grid interior.
  const double s_lo = (x - W) / eps;
  const double s_hi = (x + W) / eps;

  auto f = [&](double s) {
    return p.d2(s) * phi.value(x - eps * s, t, extend_background);
  };

  // |Phi(xi, t)| <= |xi|/(1-t) + c0 within the horizon.
  const double c0 = 3.0;
  const auto cert = p.d2_tail.with_linear_growth(
      c0 + std::fabs(x) / (1.0 - t), eps / (1.0 - t));

  quadrature::LineOptions opts;
  opts.max_panels = 8000;
  if (!extend_background) {
    // Honor the grid strictly; lookups past it throw std::out_of_range.
    opts.clamped = false;
    const auto r = quadrature::integrate_line(f, cert, rel_tol, opts);
    return r.value;
  }

  // Clamp the quadrature to the certified window and add the closed-form
  // ramp contribution of the right wing:
  //   int_{s_hi}^inf d2(s) (eps s - x)/(1-t) ds
  //     = [ (x - eps s_hi) d1(s_hi) + eps value(s_hi) ] / (1-t).
  // The left wing integrand vanishes (Phi -> 0).
  opts.clamped = true;
  opts.clamp_lo = s_lo;
  opts.clamp_hi = s_hi;
  const auto r = quadrature::integrate_line(f, cert, rel_tol, opts);
  double correction = 0.0;
  if (r.trunc_right >= s_hi - 1e-12) {
    const double sR = r.trunc_right;
    correction =
        ((x - eps * sR) * p.d1(sR) + eps * p.value(sR)) / (1.0 - t);
  }
  return r.value + correction;
}

double BumpFunction::value(double s) const {
  const double u = (s - center) / halfwidth;
  if (std::fabs(u) >= 1.0) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - u * u));
}

double BumpFunction::deriv(double s) const {
  const double u = (s - center) / halfwidth;
  if (std::fabs(u) >= 1.0) return 0.0;
  const double q = 1.0 - u * u;
  return amplitude * std::exp(-1.0 / q) * (-2.0 * u / (q * q)) / halfwidth;
}

namespace {

// Step solution of the unit-viscosity diffusive inner problem, via scaled
// complements (the shared Gaussian factor cancels in the ratio).
double burgers_step_Z(double eta, double theta, double lm, double lp) {
  const double den = 2.0 * std::sqrt(theta);
  const double bp = (lp * theta - eta) / den;
  const double bm = (eta - lm * theta) / den;
  const double lwp = specfun::log_erfcx(bp);
  const double lwm = specfun::log_erfcx(bm);
  const double m = std::max(lwp, lwm);
  const double wp = std::exp(lwp - m);
  const double wm = std::exp(lwm - m);
  return (lp * wp + lm * wm) / (wp + wm);
}

}  // namespace

GreenDeltaReport green_delta_check(GreenCase which, double lambda_minus,
                                   double lambda_plus,
                                   const BumpFunction& bump,
                                   const std::vector<double>& thetas) {
  if (lambda_minus == lambda_plus)
    throw std::invalid_argument("green_delta_check: degenerate step");
  GreenDeltaReport rep;
  rep.which = which;
  rep.thetas = thetas;
  rep.f0 = bump.value(0.0);
  const double jump = lambda_plus - lambda_minus;

  for (double theta : thetas) {
    auto Z = [&](double eta) {
      if (which == GreenCase::kBurgersStep)
        return burgers_step_Z(eta, theta, lambda_minus, lambda_plus);
      // Dispersive step: lambda_minus = a, lambda_plus = 0 in inner units.
      return gp_dsw_Z(eta, theta, lambda_minus, 1.0);
    };
    // int G f = -(1/jump) int Z f' (f compactly supported).
    const double lo = bump.center - bump.halfwidth;
    const double hi = bump.center + bump.halfwidth;
    const auto q = quadrature::integrate_interval(
        [&](double s) { return Z(s) * bump.deriv(s); }, lo, hi, 1e-9, {}, 6000);
    rep.convolutions.push_back(-q.value / jump);

    const double W = 10.0 + 10.0 * std::sqrt(theta) +
                     5.0 * theta * std::max(std::fabs(lambda_minus),
                                            std::fabs(lambda_plus));
    rep.masses.push_back((Z(W) - Z(-W)) / jump);
  }
  return rep;
}

}  // namespace renasym::kdv
