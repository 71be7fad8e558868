#include "renasym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace renasym::verify {

double pde_residual(const Field& u, Equation eq, double x, double t, double h,
                    bool wide_third) {
  if (!(h > 0.0)) throw std::invalid_argument("pde_residual: h must be > 0");

  double ux_line[7];  // u(x + j h, t), j = -3..3
  const int reach = (eq == Equation::kKdvUnitDispersion && wide_third) ? 3 : 2;
  for (int j = -reach; j <= reach; ++j) ux_line[j + 3] = u(x + j * h, t);
  const double uc = ux_line[3];

  const double ut = (u(x, t - 2 * h) - 8.0 * u(x, t - h) + 8.0 * u(x, t + h) -
                     u(x, t + 2 * h)) /
                    (12.0 * h);
  const double ux = (ux_line[1] - 8.0 * ux_line[2] + 8.0 * ux_line[4] -
                     ux_line[5]) /
                    (12.0 * h);

  if (eq == Equation::kBurgersUnitViscosity) {
    const double uxx = (-ux_line[1] + 16.0 * ux_line[2] - 30.0 * ux_line[3] +
                        16.0 * ux_line[4] - ux_line[5]) /
                       (12.0 * h * h);
    return ut + uc * ux - uxx;
  }

  double uxxx;
  if (wide_third) {
    uxxx = (ux_line[0] - 8.0 * ux_line[1] + 13.0 * ux_line[2] -
            13.0 * ux_line[4] + 8.0 * ux_line[5] - ux_line[6]) /
           (8.0 * h * h * h);
  } else {
    uxxx = (-ux_line[1] + 2.0 * ux_line[2] - 2.0 * ux_line[4] + ux_line[5]) /
           (2.0 * h * h * h);
  }
  return ut + uc * ux + uxxx;
}

OrderFit fit_order(const std::vector<double>& eps,
                   const std::vector<double>& norms) {
  if (eps.size() != norms.size() || eps.size() < 2)
    throw std::invalid_argument("fit_order: need matching lists, size >= 2");
  const size_t n = eps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(eps[i] > 0.0) || !(norms[i] > 0.0))
      throw std::invalid_argument("fit_order: eps and norms must be positive");
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(norms[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  OrderFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (size_t i = 0; i < n; ++i) {
    const double pred = intercept + fit.slope * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - ybar) * (ly[i] - ybar);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

struct Norms {
  double max_abs;
  double rms;
};

Norms residual_norms(const Field& u, Equation eq, const Window& win, double h,
                     bool wide_third, int threads) {
  const int n = win.points;
  std::vector<double> r(n);
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const double x =
          win.x_min + (win.x_max - win.x_min) * i / double(n - 1);
      r[i] = pde_residual(u, eq, x, win.t, h, wide_third);
    }
  };
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int th = 0; th < threads; ++th) {
      const int lo = th * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  Norms out{0.0, 0.0};
  for (double v : r) {
    out.max_abs = std::max(out.max_abs, std::fabs(v));
    out.rms += v * v;
  }
  out.rms = std::sqrt(out.rms / n);
  return out;
}

}  // namespace

ResidualReport residual_sweep(const SolutionFamily& family, Equation eq,
                              const Window& win,
                              const std::vector<double>& eps_list,
                              const SweepOptions& opts) {
  if (win.points < 2)
    throw std::invalid_argument("residual_sweep: window needs >= 2 points");
  ResidualReport rep;
  rep.equation = eq == Equation::kBurgersUnitViscosity
                     ? "burgers_unit_viscosity"
                     : "kdv_unit_dispersion";
  rep.window = win;
  for (double eps : eps_list) {
    const Field u = family(eps);
    const double h = std::max(opts.h_rule_c * eps, opts.h_floor);
    const Norms at_h =
        residual_norms(u, eq, win, h, opts.wide_third, opts.threads);
    rep.epsilons.push_back(eps);
    rep.norms_max.push_back(at_h.max_abs);
    rep.norms_l2.push_back(at_h.rms);
    rep.h_values.push_back(h);
    if (opts.contamination_check) {
      const Norms at_h2 =
          residual_norms(u, eq, win, 0.5 * h, opts.wide_third, opts.threads);
      rep.fd_contamination.push_back(std::fabs(at_h.max_abs - at_h2.max_abs) /
                                     std::max(at_h2.max_abs, 1e-300));
    }
  }
  if (rep.epsilons.size() >= 3) {
    const OrderFit fit = fit_order(rep.epsilons, rep.norms_max);
    rep.fitted_order = fit.slope;
    rep.fit_r2 = fit.r2;
  } else {
    rep.fitted_order = std::nan("");
    rep.fit_r2 = std::nan("");
  }
  return rep;
}

double compare_fields(const Field& u, const Field& v, const Window& win,
                      Norm norm) {
  if (win.points < 1)
    throw std::invalid_argument("compare_fields: empty window");
  double max_abs = 0.0, sq = 0.0;
  for (int i = 0; i < win.points; ++i) {
    const double x =
        win.points == 1
            ? win.x_min
            : win.x_min + (win.x_max - win.x_min) * i / double(win.points - 1);
    const double d = u(x, win.t) - v(x, win.t);
    max_abs = std::max(max_abs, std::fabs(d));
    sq += d * d;
  }
  return norm == Norm::kMax ? max_abs : std::sqrt(sq / win.points);
}

void write_residual_csv(const ResidualReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_residual_csv: cannot open " + path);
  out << "epsilon,norm_max,norm_l2,h\n";
  char line[256];
  for (size_t i = 0; i < rep.epsilons.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n",
                  rep.epsilons[i], rep.norms_max[i], rep.norms_l2[i],
                  rep.h_values[i]);
    out << line;
  }
}

void write_residual_json(const ResidualReport& rep, const std::string& path) {
  nlohmann::json j;
  j["fitted_order"] = rep.fitted_order;
  j["fit_r2"] = rep.fit_r2;
  j["epsilons"] = rep.epsilons;
  j["norms"] = rep.norms_max;
  j["norms_l2"] = rep.norms_l2;
  j["window"] = {{"x_min", rep.window.x_min},
                 {"x_max", rep.window.x_max},
                 {"points", rep.window.points},
                 {"t", rep.window.t}};
  j["equation"] = rep.equation;
  j["norm_type"] = rep.norm_type;
  j["h"] = rep.h_values;
  if (!rep.fd_contamination.empty())
    j["fd_contamination"] = rep.fd_contamination;
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_residual_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace renasym::verify
