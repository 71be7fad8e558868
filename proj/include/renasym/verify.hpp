#ifndef RENASYM_VERIFY_HPP
#define RENASYM_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

namespace renasym::verify {

/// Pointwise-evaluable space-time field. Must be pure (sweeps may evaluate
/// it from several threads).
using Field = std::function<double(double x, double t)>;

enum class Equation { kBurgersUnitViscosity, kKdvUnitDispersion };
enum class Norm { kMax, kL2 };

struct Window {
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 0;
  double t = 0.0;
};

/// PDE operator applied through centered differences: 4th order for u_x,
/// u_xx and u_t; third derivative by the 4th-order 7-point stencil when
/// wide_third is set, else the 2nd-order 5-point one.
double pde_residual(const Field& u, Equation eq, double x, double t, double h,
                    bool wide_third = true);

struct OrderFit {
  double slope = 0.0;
  double r2 = 0.0;
};

/// Least-squares slope of log(norm) against log(eps).
OrderFit fit_order(const std::vector<double>& eps,
                   const std::vector<double>& norms);

struct ResidualReport {
  std::string equation;
  std::vector<double> epsilons;
  std::vector<double> norms_max;
  std::vector<double> norms_l2;
  std::vector<double> h_values;
  // |norm(h) - norm(h/2)| / norm(h/2), per epsilon; empty when disabled.
  std::vector<double> fd_contamination;
  double fitted_order = 0.0;  // fit on the max norms
  double fit_r2 = 0.0;
  Window window;
  std::string norm_type = "max";
};

using SolutionFamily = std::function<Field(double eps)>;

struct SweepOptions {
  double h_rule_c = 0.5;  // h = max(c * eps, h_floor)
  double h_floor = 0.0;
  bool wide_third = true;
  bool contamination_check = true;
  int threads = 1;
};

/// Residual norms over the window at fixed t for each eps, with the fitted
/// convergence order. The L2 entry is the root mean square over the grid.
ResidualReport residual_sweep(const SolutionFamily& family, Equation eq,
                              const Window& win,
                              const std::vector<double>& eps_list,
                              const SweepOptions& opts = {});

/// Norm of u - v sampled on the window grid.
double compare_fields(const Field& u, const Field& v, const Window& win,
                      Norm norm);

void write_residual_csv(const ResidualReport& rep, const std::string& path);
void write_residual_json(const ResidualReport& rep, const std::string& path);

}  // namespace renasym::verify

#endif
