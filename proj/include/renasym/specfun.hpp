#ifndef RENASYM_SPECFUN_HPP
#define RENASYM_SPECFUN_HPP

#include <functional>

namespace renasym::specfun {

/// Complementary error function. Rational minimax evaluation, accurate to a
/// few ulps over |x| <= 26.5; underflows to 0 beyond.
double erfc(double x);

/// Scaled complement exp(x^2) erfc(x). Well behaved for large positive x.
/// Throws std::overflow_error for x <= -26.62 where exp(x^2) erfc(x)
/// exceeds the double range; use log_erfcx there instead.
double erfcx(double x);

/// log(erfc(x)), finite for every finite x.
double log_erfc(double x);

/// log(erfcx(x)), finite for every finite x.
double log_erfcx(double x);

struct EllipticPair {
  double k;  // modulus in [0,1]
  double K;
  double E;
};

/// Complete elliptic integrals of the first and second kind, modulus
/// convention: K(k) = int_0^{pi/2} dv / sqrt(1 - k^2 sin^2 v).
/// AGM iteration, relative accuracy ~1e-15. Domain 0 <= k <= 1; K diverges
/// at k = 1 (std::domain_error), E(1) = 1 is returned when k = 1 is passed
/// with allow_k1 = true.
EllipticPair elliptic_KE(double k, bool allow_k1 = false);

/// Jacobi dn(u, k) with the second argument the modulus (parameter m = k^2).
/// dn(u, 0) = 1, dn(u, 1) = sech(u); otherwise periodic with period 2K(k).
double jacobi_dn(double u, double k);

/// Root of f on [a, b] with f(a) f(b) <= 0 by Brent's method. Guaranteed to
/// converge to a bracket of width <= tol (plus a few ulps of |x|).
/// Throws std::invalid_argument when the bracket is invalid.
double bracket_root(const std::function<double(double)>& f, double a, double b,
                    double tol);

}  // namespace renasym::specfun

#endif
