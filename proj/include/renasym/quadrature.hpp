#ifndef RENASYM_QUADRATURE_HPP
#define RENASYM_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace renasym::quadrature {

using Integrand = std::function<double(double)>;

/// Algebraic tail bound |f(s)| <= constant * |s|^(-order) past the threshold,
/// one order per side. Orders must be >= 2 for the line integrals used here.
struct TailCertificate {
  double left_order = 0.0;
  double right_order = 0.0;
  double constant = 0.0;
  double threshold = 0.0;

  bool valid() const {
    return left_order >= 2.0 && right_order >= 2.0 && constant > 0.0 &&
           threshold > 0.0;
  }

  /// Certificate for f(s) * g(s) with |g| <= a + b s^2. Costs two orders.
  TailCertificate with_polynomial_growth(double a, double b) const;

  /// Certificate for f(s) * g(s) with |g| <= a + b |s|. Costs one order.
  TailCertificate with_linear_growth(double a, double b) const;

  /// Certificate for f(s) * g(s) with |g| <= a.
  TailCertificate scaled(double a) const;

  /// int_T^inf of the one-sided bound (and mirrored), for T >= threshold.
  double tail_bound(double T) const;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  double l1 = 0.0;  // estimate of int |f|
};

struct LineResult {
  double value = 0.0;
  double err_est = 0.0;
  double trunc_left = 0.0;   // integration ran over [trunc_left, trunc_right]
  double trunc_right = 0.0;
  bool certificate_warning = false;  // sampled |f| exceeded the tail bound
};

/// Adaptive Gauss-Kronrod (7/15) integration over [a, b]. Splits the worst
/// panel until the error estimate passes rel_tol relative to the accumulated
/// L1 mass. Throws std::runtime_error after max_panels subdivisions.
QuadResult integrate_interval(const Integrand& f, double a, double b,
                              double rel_tol,
                              const std::vector<double>& breakpoints = {},
                              int max_panels = 2000);

struct LineOptions {
  // Clamp the integration range; contributions outside are the caller's
  // responsibility (analytic corrections). NaN means unclamped.
  double clamp_lo = 0.0, clamp_hi = 0.0;
  bool clamped = false;
  bool probe_certificate = true;
  int max_panels = 4000;
};

/// Whole-line integral with certificate-driven truncation: the radius T is
/// grown until the certified tail remainder is below rel_tol/10 of the
/// accumulated mass, then core and wings are integrated adaptively.
LineResult integrate_line(const Integrand& f, const TailCertificate& tail,
                          double rel_tol, const LineOptions& opts = {});

}  // namespace renasym::quadrature

#endif
