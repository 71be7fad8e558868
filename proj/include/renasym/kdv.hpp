#ifndef RENASYM_KDV_HPP
#define RENASYM_KDV_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "renasym/profiles.hpp"

namespace renasym::kdv {

using profiles::InitialProfile;

/// Point on the self-similar modulation curve: the modulus sigma and phase
/// density omega at similarity coordinate y = x/(a t), y in [-1, 2/3].
struct WhithamPoint {
  double y = 0.0;
  double sigma = 0.0;
  double omega = 0.0;
};

/// Residual of the modulation relation
///   1 + s^2 - 2 s^2 (1-s^2) K(s) / (E(s) - (1-s^2) K(s)) - 3y
/// (the solved quantity; exposed for direct testing).
double whitham_residual(double sigma, double y);

/// Solves the relation for sigma on [-1, 2/3]; the edges are handled exactly
/// (sigma(-1) = 0, sigma(2/3) = 1). Throws std::domain_error outside.
WhithamPoint sigma_of_y(double y);

/// Self-similar oscillation-zone solution for step data a -> 0:
/// a for y <= -1, 0 for y >= 2/3, and inside the fan
///   Z = a [ 2 dn^2(a^{3/2} t omega(y) / sqrt(eps), sigma(y)) + sigma^2 - 1 ].
double gp_dsw_Z(double x, double t, double a, double eps);

/// Smoothed-step evaluation of the renormalized oscillation-zone formula:
/// 2 L((x+at)/rho) - L((x-2at/3)/rho)
///   - (at/rho) int_{-1}^{2/3} L'((x-aty)/rho) [2 dn^2 + sigma^2] dy.
/// Requires limit_plus = 0 and limit_minus = a > 0. The y integral is
/// pre-subdivided so each dn^2 period is sampled by >= 10 nodes.
double gp_renormalized(const InitialProfile& p, double x, double t, double eps,
                       double rho, double rel_tol = 1e-9);

struct FaminskiiConfig {
  double L = 150.0;   // periodic half-width
  int N = 32768;      // grid size (power of two)
  double delta = 0.5; // final time, < 1
  double tol = 1e-7;  // accuracy target for stored slices
  // Slices stored at exactly these times plus a uniform grid of spacing
  // slice_spacing; t = 0 is always stored.
  std::vector<double> capture_times;
  double slice_spacing = 1.0 / 128.0;
  double cfl_safety = 0.5;
  // Outgoing-radiation absorber near the boundary and high-wavenumber
  // damping folded into the linear propagator.
  double sponge_start_frac = 0.70;
  double sponge_strength = 300.0;
  double filter_start_frac = 0.25;
  double filter_strength = 4.0e4;
  bool spot_check = true;
};

/// Sampled solution of
///   Phi_t + Phi Phi_x + Phi_xxx = 0,  Phi(x, 0) = -x Theta(-x),
/// stored as deviation slices from the background -x S(x)/(1-t) on a
/// periodic grid. Immutable once built; safe for concurrent reads.
class PhiField {
 public:
  struct Diagnostics {
    double dt = 0.0;
    double boundary_contamination = 0.0;  // max |v| near the domain edge
    double interp_error_est = 0.0;        // cubic interpolation certificate
    double residual_spot = 0.0;           // PDE residual spot check
  };

  double value(double x, double t, bool extended = false) const;

  double L() const { return L_; }
  int N() const { return N_; }
  double delta() const { return delta_; }
  double tol() const { return tol_; }
  double dx() const { return 2.0 * L_ / N_; }
  /// Interior half-width with certified interpolation (inside the sponge).
  double certified_half_width() const { return certified_half_width_; }
  const std::vector<double>& times() const { return times_; }
  bool has_time(double t) const;
  const Diagnostics& diagnostics() const { return diag_; }

  void save(const std::string& path) const;
  static PhiField load(const std::string& path);

 private:
  friend PhiField solve_faminskii(const FaminskiiConfig& cfg);
  PhiField() = default;

  double slice_value(int i, double x) const;  // cubic in x on slice i

  double L_ = 0.0;
  int N_ = 0;
  double delta_ = 0.0;
  double tol_ = 0.0;
  double certified_half_width_ = 0.0;
  std::vector<double> times_;
  std::vector<std::vector<double>> v_;  // deviation slices, one per time
  Diagnostics diag_;
};

/// Spectral solve with exponential time differencing; throws
/// std::runtime_error when the spot residual check fails.
PhiField solve_faminskii(const FaminskiiConfig& cfg);

/// Renormalized weak-discontinuity approximation
///   R(x, t) = int d2(s) Phi(x - eps s, t) ds.
/// With extend_background the lookup past the stored grid uses the
/// far-field forms (-x/(1-t) left, 0 right) plus the closed-form ramp tail
/// correction; otherwise an out-of-range lookup throws std::out_of_range.
double renorm_weak_kdv(const InitialProfile& p, const PhiField& phi, double x,
                       double t, double eps, double rel_tol = 1e-10,
                       bool extend_background = true);

/// C-infinity bump with closed-form derivative, for the delta-family probe.
struct BumpFunction {
  double center = 0.0;
  double halfwidth = 1.0;
  double amplitude = 1.0;
  double value(double s) const;
  double deriv(double s) const;
};

enum class GreenCase { kBurgersStep, kKdvStep };

struct GreenDeltaReport {
  GreenCase which;
  std::vector<double> thetas;
  std::vector<double> convolutions;  // int G(.,theta) f
  std::vector<double> masses;        // int G(.,theta), exact telescoping
  double f0 = 0.0;
};

/// Checks that the derivative kernel of the step solution acts like a delta
/// family as theta -> 0. Gating applies to the Burgers case only; the
/// dispersive case is reported as-is.
GreenDeltaReport green_delta_check(GreenCase which, double lambda_minus,
                                   double lambda_plus,
                                   const BumpFunction& bump,
                                   const std::vector<double>& thetas);

}  // namespace renasym::kdv

#endif
