#include "renasym/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace renasym::specfun {

namespace {

// Rational minimax coefficients for erf/erfc/erfcx (Cody, Math. Comp. 1969,
// netlib specfun). Three regimes: |x| <= 0.46875, 0.46875 < x <= 4, x > 4.
constexpr double kA[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                          3.77485237685302021e2, 3.20937758913846947e3,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                          1.28261652607737228e3, 2.84423683343917062e3};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                          6.61191906371416295e1,  2.98635138197400131e2,
                          8.81952221241769090e2,  1.71204761263407058e3,
                          2.05107837782607147e3,  1.23033935479799725e3,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                          5.37181101862009858e2, 1.62138957456669019e3,
                          3.29079923573345963e3, 4.36261909014324716e3,
                          3.43936767414372164e3, 1.23033935480374942e3};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kErfcxNegLimit = -26.62;  // exp(x^2) erfc(x) overflows below

// erf(x) for |x| <= 0.46875.
double erf_small(double x) {
  const double y = std::fabs(x);
  double ysq = 0.0;
  if (y > 1.11e-16) ysq = y * y;
  double xnum = kA[4] * ysq;
  double xden = ysq;
  for (int i = 0; i < 3; ++i) {
    xnum = (xnum + kA[i]) * ysq;
    xden = (xden + kB[i]) * ysq;
  }
  return x * (xnum + kA[3]) / (xden + kB[3]);
}

// erfcx(y) for 0.46875 <= y <= 4.
double erfcx_mid(double y) {
  double xnum = kC[8] * y;
  double xden = y;
  for (int i = 0; i < 7; ++i) {
    xnum = (xnum + kC[i]) * y;
    xden = (xden + kD[i]) * y;
  }
  return (xnum + kC[7]) / (xden + kD[7]);
}

// erfcx(y) for y > 4.
double erfcx_large(double y) {
  const double ysq = 1.0 / (y * y);
  double xnum = kP[5] * ysq;
  double xden = ysq;
  for (int i = 0; i < 4; ++i) {
    xnum = (xnum + kP[i]) * ysq;
    xden = (xden + kQ[i]) * ysq;
  }
  double r = ysq * (xnum + kP[4]) / (xden + kQ[4]);
  return (kInvSqrtPi - r) / y;
}

// exp(-y^2) evaluated as in the reference scheme: split y to reduce the
// rounding of y*y for large arguments.
double exp_msq(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

double erfcx_positive(double y) {
  if (y <= 0.46875) return std::exp(y * y) * (1.0 - erf_small(y));
  if (y <= 4.0) return erfcx_mid(y);
  return erfcx_large(y);
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  const double y = std::fabs(x);
  if (y <= 0.46875) return 1.0 - erf_small(x);
  double r;
  if (y <= 4.0) {
    r = erfcx_mid(y) * exp_msq(y);
  } else if (y < 26.6) {
    r = erfcx_large(y) * exp_msq(y);
  } else {
    r = 0.0;
  }
  return x < 0.0 ? 2.0 - r : r;
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.0) return erfcx_positive(x);
  if (x <= kErfcxNegLimit)
    throw std::overflow_error(
        "erfcx: exp(x^2) erfc(x) overflows for x <= -26.62; use log_erfcx");
  // erfcx(-y) = 2 exp(y^2) - erfcx(y)
  const double y = -x;
  return 2.0 * std::exp(y * y) - erfcx_positive(y);
}

double log_erfc(double x) {
  if (x <= 0.0) return std::log(erfc(x));  // erfc in [1,2), no cancellation
  return std::log(erfcx_positive(x)) - x * x;
}

double log_erfcx(double x) {
  if (x >= 0.0) return std::log(erfcx_positive(x));
  // erfcx(x) = e^{x^2} (2 - erfc(-x)) with erfc(-x) in (0,1): safe subtraction
  return x * x + std::log(2.0 - erfc(-x));
}

EllipticPair elliptic_KE(double k, bool allow_k1) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("elliptic_KE: modulus must lie in [0,1]");
  constexpr double half_pi = 1.57079632679489661923;
  if (k == 0.0) return {k, half_pi, half_pi};
  if (k == 1.0) {
    if (!allow_k1)
      throw std::domain_error("elliptic_KE: K diverges at k = 1");
    return {k, std::numeric_limits<double>::infinity(), 1.0};
  }
  // AGM with the c-sequence accumulating E.
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));  // k'
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 1.0;
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    sum += 0.5 * pow2 * c * c;
    if (c < 1e-17 * a) break;
  }
  const double K = half_pi / a;
  const double E = K * (1.0 - sum);
  return {k, K, E};
}

double jacobi_dn(double u, double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("jacobi_dn: modulus must lie in [0,1]");
  if (k == 0.0) return 1.0;
  if (k == 1.0) return 1.0 / std::cosh(u);
  const double kp2 = (1.0 - k) * (1.0 + k);
  if (k < 1e-8) {
    // dn = 1 - (k^2/2) sin^2 u + O(k^4)
    const double s = std::sin(u);
    return 1.0 - 0.5 * k * k * s * s;
  }
  // Reduce by periodicity (period 2K) to keep the phase recursion accurate.
  const double K = elliptic_KE(k).K;
  u = std::remainder(u, 2.0 * K);

  // Descending AGM ladder, then recover the amplitude phi = am(u, k) from
  // the top and unwind: sin(2 phi_{n-1} - phi_n) = (c_n / a_n) sin phi_n.
  double a[32], c[32];
  double an = 1.0, bn = std::sqrt(kp2), cn = k;
  int n = 0;
  a[0] = an;
  c[0] = cn;
  while (std::fabs(cn) > 1e-17 * an && n < 31) {
    const double a1 = 0.5 * (an + bn);
    const double b1 = std::sqrt(an * bn);
    cn = 0.5 * (an - bn);
    an = a1;
    bn = b1;
    ++n;
    a[n] = an;
    c[n] = cn;
  }
  double phi = std::ldexp(an * u, n);  // 2^n a_n u
  for (int i = n; i > 0; --i) {
    const double s = (c[i] / a[i]) * std::sin(phi);
    phi = 0.5 * (phi + std::asin(std::clamp(s, -1.0, 1.0)) );
  }
  const double sp = std::sin(phi);
  const double dn2 = 1.0 - k * k * sp * sp;
  return std::sqrt(std::max(dn2, kp2));
}

double bracket_root(const std::function<double(double)>& f, double a, double b,
                    double tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("bracket_root: f(a) f(b) > 0, no bracket");
  if (!(tol > 0.0)) tol = 1e-14;

  // Brent: inverse quadratic / secant with bisection fallback.
  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                             std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace renasym::specfun
