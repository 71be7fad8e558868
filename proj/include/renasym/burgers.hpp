#ifndef RENASYM_BURGERS_HPP
#define RENASYM_BURGERS_HPP

#include <functional>
#include <string>

#include "renasym/profiles.hpp"

namespace renasym::burgers {

using profiles::InitialProfile;

enum class Regime { kLargeGradient, kWeakDiscontinuity };

/// Small-parameter bundle. The large-gradient regime is controlled by
/// rho/epsilon, the dispersive one by mu = rho/sqrt(epsilon).
struct AsymptoticParams {
  double epsilon = 0.0;
  double rho = 0.0;
  Regime regime = Regime::kWeakDiscontinuity;

  static AsymptoticParams large_gradient(double epsilon, double rho);
  static AsymptoticParams weak_discontinuity(double epsilon);

  double mu() const;
};

/// Log-domain state of the heat-kernel superposition Psi at one point:
/// Psi(x,t) = sqrt(pi t/(1-t)) erfcx(x/(2 sqrt(t(1-t)))) exp(-x^2/(4t))
///          + sqrt(pi t) erfc(-x/(2 sqrt(t))),
/// valid for 0 < t < 1 (the first piece diverges at t = 1).
struct PsiValue {
  double log_psi = 0.0;
  double psi_x_over_psi = 0.0;
  double psi_xx_over_psi = 0.0;
};

/// Stable for |x| up to ~1e3. Throws std::domain_error outside 0 < t < 1.
PsiValue psi(double x, double t);

/// Exact self-similar solution with a weak initial discontinuity:
/// u0 = -2 Psi_x / Psi, u0(x, 0+) = -x Theta(-x), unit viscosity.
double u0_weak(double x, double t);

/// Renormalized approximation R(x,t) = -(2/eps) int d3(s) log Psi(x - eps s)
/// for profiles meeting the weak-discontinuity hypotheses.
double renorm_weak_burgers(const InitialProfile& p, double x, double t,
                           double eps, double rel_tol = 1e-10);

/// Convex-combination kernel of the large-gradient formula, evaluated through
/// scaled complements so the shared Gaussian factor cancels exactly.
double large_gradient_kernel(double s, double x, double t, double eps,
                             double rho, double lam_minus, double lam_plus);

/// Large-initial-gradient approximation: the kernel convolved against
/// d1(s) / (lambda_plus - lambda_minus). Requires a step profile.
double large_gradient_burgers(const InitialProfile& p, double x, double t,
                              double eps, double rho, double rel_tol = 1e-10);

/// Initial datum for the exact quadrature solution: the datum itself and its
/// antiderivative from 0 (the Hopf potential).
struct CHDatum {
  std::function<double(double)> u;
  std::function<double(double)> potential;
  std::string name;
};

CHDatum ch_constant(double c);
CHDatum ch_step(double lambda_minus, double lambda_plus);
/// -y Theta(-y) cut off outside |y| <= trunc.
CHDatum ch_ramp_weak(double trunc = 60.0);
/// u(y) = profile.value(y / rho); needs the profile's antiderivative.
CHDatum ch_from_profile(const InitialProfile& p, double rho);

/// Exact viscous solution by saddle-normalized quadrature of the Hopf
/// formula, viscosity eps. Throws on quadrature failure.
double cole_hopf_reference(const CHDatum& datum, double x, double t,
                           double eps, double rel_tol = 1e-10);

}  // namespace renasym::burgers

#endif
