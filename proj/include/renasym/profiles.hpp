#ifndef RENASYM_PROFILES_HPP
#define RENASYM_PROFILES_HPP

#include <functional>
#include <string>
#include <vector>

#include "renasym/quadrature.hpp"

namespace renasym::profiles {

using quadrature::TailCertificate;

enum class ProfileKind {
  kStep,               // finite limits on both sides
  kWeakDiscontinuity,  // ramp normal form: value + s Theta(-s) -> 0
};

/// An initial profile with analytic derivatives through third order.
/// Immutable after construction; safe to share across threads.
///
/// Tail certificate semantics: d2_tail and d3_tail always bound |d2| and |d3|.
/// d1_tail bounds |d1| for step profiles and the ramp deviation
/// |d1(s) + Theta(-s)| for weak-discontinuity profiles.
struct InitialProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
  // int_0^s value, when a closed form exists (empty otherwise).
  std::function<double(double)> antiderivative;

  double limit_minus = 0.0;  // +inf for weak-discontinuity profiles
  double limit_plus = 0.0;

  TailCertificate d1_tail;
  TailCertificate d2_tail;
  TailCertificate d3_tail;

  ProfileKind kind = ProfileKind::kStep;
  std::string family;
  double width = 1.0;
};

/// Smooth monotone step between lambda_minus (left) and lambda_plus (right):
/// value(s) = lp + (lm - lp) / (1 + exp(2 s / w)), so value(0) is the
/// midpoint and derivatives decay like exp(-2|s|/w).
InitialProfile make_smoothed_step(double lambda_minus, double lambda_plus,
                                  double width);

enum class RampKind { kBurgersT1, kKdvT2 };

/// Softplus ramp value(s) = (w/2) log(1 + exp(-2 s / w)): tends to -s on the
/// left and 0 on the right with exponentially small deviations.
InitialProfile make_ramp_profile(RampKind kind, double width);

/// Ramp with exact algebraic tails at the boundary decay rates:
/// value = c_plus / s^2 for s >= S, value = -s + c_minus / s^2 for s <= -S,
/// with a degree-7 two-point Hermite join on [-S, S] (C^3 everywhere).
/// Truncated moments then scale exactly: int_{|s|<A} s d2 = 3 (c_minus -
/// c_plus) / A^2 and int_{|s|<A} d3 = 6 (c_plus - c_minus) / A^4.
InitialProfile make_power_tail_profile(double c_plus = 1.0,
                                       double c_minus = 2.0, double S = 2.0);

/// Deliberately inadmissible ramp (d1 deviation ~ c/|s|); its certificates
/// are left invalid and hypothesis checks are expected to fail.
InitialProfile make_slow_tail_profile(double c = 1.0);

enum class Hypotheses { kT1, kT2, kLargeGradient };

struct HypothesisCheck {
  std::string name;
  double inner_max = 0.0;  // scaled bound over |s| in [10, 1e3]
  double outer_max = 0.0;  // scaled bound over |s| in [1e4, 1e6]
  bool bounded = false;
};

struct HypothesisReport {
  bool pass = false;
  std::vector<HypothesisCheck> checks;
};

/// Samples the scaled tail quantities behind each hypothesis on a log grid
/// and reports boundedness. Diagnostic only; nothing throws on failure.
HypothesisReport verify_hypotheses(const InitialProfile& p, Hypotheses which);

}  // namespace renasym::profiles

#endif
