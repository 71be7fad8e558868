#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "renasym/kdv.hpp"

namespace renasym::kdv {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// C7 polynomial step: B(0) = 0, B(1) = 1, B^(1..7) = 0 at both ends.
constexpr double kStepCoef[8] = {6435.0,   -40040.0, 108108.0, -163800.0,
                                 150150.0, -83160.0, 25740.0,  -3432.0};

double step_poly(double u, int deriv) {
  // B(u) = sum_j kStepCoef[j] u^(8+j); returns d^deriv B / du^deriv.
  double acc = 0.0;
  for (int j = 7; j >= 0; --j) {
    const int p = 8 + j;
    double fac = 1.0;
    for (int q = 0; q < deriv; ++q) fac *= double(p - q);
    acc = acc * u + kStepCoef[j] * fac;
  }
  for (int q = 0; q < 8 - deriv; ++q) acc *= u;
  return acc;
}

// Cutoff S: 1 for x <= -1, 0 for x >= 1, C7 transition.
double cutoff_S(double x, int deriv) {
  if (x <= -1.0 || x >= 1.0) {
    return (deriv == 0 && x <= -1.0) ? 1.0 : 0.0;
  }
  const double u = 0.5 * (x + 1.0);
  const double scale = std::pow(0.5, deriv);
  return (deriv == 0 ? 1.0 : 0.0) - scale * step_poly(u, deriv);
}

double background_b0(double x) { return -x * cutoff_S(x, 0); }

double background(double x, double t) { return background_b0(x) / (1.0 - t); }

double datum(double x) { return x < 0.0 ? -x : 0.0; }

// phi_1..phi_3 with a series fallback near the origin.
cplx phi_fn(int m, cplx z) {
  if (std::abs(z) > 1.0) {
    const cplx ez = std::exp(z);
    if (m == 1) return (ez - 1.0) / z;
    if (m == 2) return (ez - 1.0 - z) / (z * z);
    return (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
  }
  cplx term(1.0, 0.0), sum(0.0, 0.0);
  double fact = 1.0;
  for (int j = 0; j <= 20; ++j) {
    fact = 1.0;
    for (int q = 1; q <= j + m; ++q) fact *= q;
    sum += term / fact;
    term *= z;
  }
  return sum;
}

struct Spectral {
  int N;
  int nh;  // N/2 + 1
  fftw_plan fwd, bwd;
  std::vector<double> real_buf;
  std::vector<cplx> cplx_buf;

  explicit Spectral(int n) : N(n), nh(n / 2 + 1), real_buf(n), cplx_buf(nh) {
    fwd = fftw_plan_dft_r2c_1d(
        N, real_buf.data(), reinterpret_cast<fftw_complex*>(cplx_buf.data()),
        FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(
        N, reinterpret_cast<fftw_complex*>(cplx_buf.data()), real_buf.data(),
        FFTW_ESTIMATE);
  }
  ~Spectral() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  void forward(const std::vector<double>& in, std::vector<cplx>& out) {
    std::memcpy(real_buf.data(), in.data(), N * sizeof(double));
    fftw_execute(fwd);
    out.assign(cplx_buf.begin(), cplx_buf.end());
  }
  void backward(const std::vector<cplx>& in, std::vector<double>& out) {
    std::copy(in.begin(), in.end(), cplx_buf.begin());
    fftw_execute(bwd);
    out.resize(N);
    const double inv = 1.0 / N;
    for (int i = 0; i < N; ++i) out[i] = real_buf[i] * inv;
  }
};

}  // namespace

PhiField solve_faminskii(const FaminskiiConfig& cfg) {
  if (cfg.N < 16 || (cfg.N & (cfg.N - 1)) != 0)
    throw std::invalid_argument("solve_faminskii: N must be a power of two");
  if (!(cfg.delta > 0.0) || cfg.delta >= 1.0)
    throw std::invalid_argument("solve_faminskii: delta must lie in (0, 1)");
  if (!(cfg.L > 4.0))
    throw std::invalid_argument("solve_faminskii: L too small");

  const int N = cfg.N;
  const double L = cfg.L;
  const double dx = 2.0 * L / N;
  const int nh = N / 2 + 1;
  const int n_keep = N / 3;  // 2/3 dealiasing

  // Assemble capture schedule: t = 0, the uniform slice grid, user times,
  // and a 5-slice cluster for the PDE spot check.
  std::vector<double> times{0.0};
  for (double t = cfg.slice_spacing; t < cfg.delta + 1e-12;
       t += cfg.slice_spacing)
    times.push_back(std::min(t, cfg.delta));
  times.push_back(cfg.delta);
  for (double t : cfg.capture_times) {
    if (t < -1e-15 || t > cfg.delta + 1e-12)
      throw std::invalid_argument(
          "solve_faminskii: capture time outside [0, delta]");
    times.push_back(std::clamp(t, 0.0, cfg.delta));
  }
  const double t_spot = 0.5 * cfg.delta;
  if (cfg.spot_check) times.push_back(t_spot);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-13; }),
              times.end());

  // Grid, background pieces, sponge, forcing.
  std::vector<double> x(N), b0(N), gamma(N), f0(N), f1(N);
  const double xs = cfg.sponge_start_frac * L;
  for (int i = 0; i < N; ++i) {
    x[i] = -L + i * dx;
    b0[i] = background_b0(x[i]);
    const double S = cutoff_S(x[i], 0);
    const double S1 = cutoff_S(x[i], 1);
    const double S2 = cutoff_S(x[i], 2);
    const double S3 = cutoff_S(x[i], 3);
    const double b0p = -S - x[i] * S1;
    const double b0ppp = -3.0 * S2 - x[i] * S3;
    f0[i] = -(b0[i] + b0[i] * b0p);
    f1[i] = -b0ppp;
    const double ax = std::fabs(x[i]);
    if (ax > xs) {
      const double u = std::min((ax - xs) / (L - xs), 1.0);
      gamma[i] = cfg.sponge_strength * u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
    } else {
      gamma[i] = 0.0;
    }
  }

  Spectral sp(N);
  std::vector<cplx> f0_hat, f1_hat;
  sp.forward(f0, f0_hat);
  sp.forward(f1, f1_hat);

  // Initial deviation v(x,0) = datum(x) - b0(x); zero outside [-1, 1].
  std::vector<double> v(N);
  for (int i = 0; i < N; ++i) v[i] = datum(x[i]) - b0[i];
  std::vector<cplx> vh;
  sp.forward(v, vh);

  // Wavenumbers and the linear symbol i k^3 - d(k).
  std::vector<double> k(nh);
  for (int n = 0; n < nh; ++n) k[n] = kPi * n / L;
  const double kmax = k[nh - 1];
  const double kc = cfg.filter_start_frac * kmax;
  std::vector<cplx> Lsym(nh);
  for (int n = 0; n < nh; ++n) {
    double d = 0.0;
    if (k[n] > kc) {
      const double u = (k[n] - kc) / (kmax - kc);
      d = cfg.filter_strength * u * u * u * u;
    }
    Lsym[n] = cplx(-d, k[n] * k[n] * k[n]);
  }

  // Fixed step from the advection scale; captures shorten single steps.
  const double umax = L / (1.0 - cfg.delta) + 3.0;
  const double k_adv = kPi * n_keep / L;
  const double dt0 = cfg.cfl_safety * 2.8 / (k_adv * umax);

  std::vector<cplx> E(nh), E2(nh), Qc(nh), F1(nh), F2(nh), F3(nh);
  double dt_planned = -1.0;
  auto plan_coefficients = [&](double h) {
    if (h == dt_planned) return;
    dt_planned = h;
    for (int n = 0; n < nh; ++n) {
      const cplx z = Lsym[n] * h;
      E[n] = std::exp(z);
      E2[n] = std::exp(0.5 * z);
      Qc[n] = 0.5 * h * phi_fn(1, 0.5 * z);
      const cplx p1 = phi_fn(1, z), p2 = phi_fn(2, z), p3 = phi_fn(3, z);
      F1[n] = h * (p1 - 3.0 * p2 + 4.0 * p3);
      F2[n] = h * (p2 - 2.0 * p3);
      F3[n] = h * (4.0 * p3 - p2);
    }
  };

  std::vector<double> vr(N), w(N);
  std::vector<cplx> wh, trunc(nh);
  auto nonlinear = [&](const std::vector<cplx>& state, double t,
                       std::vector<cplx>& out) {
    std::copy(state.begin(), state.end(), trunc.begin());
    for (int n = n_keep; n < nh; ++n) trunc[n] = 0.0;
    sp.backward(trunc, vr);
    const double omt_inv = 1.0 / (1.0 - t);
    for (int i = 0; i < N; ++i)
      w[i] = 0.5 * vr[i] * vr[i] + b0[i] * omt_inv * vr[i];
    sp.forward(w, wh);
    out.resize(nh);
    const double s1 = omt_inv * omt_inv, s2 = omt_inv;
    for (int n = 0; n < nh; ++n) {
      cplx adv = (n < n_keep) ? cplx(0.0, -k[n]) * wh[n] : cplx(0.0, 0.0);
      out[n] = adv + f0_hat[n] * s1 + f1_hat[n] * s2;
    }
  };

  std::vector<cplx> Nv(nh), Na(nh), Nb(nh), Nc(nh), a(nh), bb(nh), cc(nh);
  std::vector<std::vector<double>> slices;
  slices.reserve(times.size());

  double t = 0.0;
  size_t next_cap = 0;
  // Store the initial slice exactly.
  while (next_cap < times.size() && times[next_cap] <= 1e-13) {
    slices.push_back(v);
    ++next_cap;
  }

  while (next_cap < times.size()) {
    const double target = times[next_cap];
    double h = std::min(dt0, target - t);
    if (target - t - h < 0.25 * dt0) h = target - t;  // avoid slivers
    plan_coefficients(h);

    nonlinear(vh, t, Nv);
    for (int n = 0; n < nh; ++n) a[n] = E2[n] * vh[n] + Qc[n] * Nv[n];
    nonlinear(a, t + 0.5 * h, Na);
    for (int n = 0; n < nh; ++n) bb[n] = E2[n] * vh[n] + Qc[n] * Na[n];
    nonlinear(bb, t + 0.5 * h, Nb);
    for (int n = 0; n < nh; ++n)
      cc[n] = E2[n] * a[n] + Qc[n] * (2.0 * Nb[n] - Nv[n]);
    nonlinear(cc, t + h, Nc);
    for (int n = 0; n < nh; ++n)
      vh[n] = E[n] * vh[n] + F1[n] * Nv[n] + 2.0 * F2[n] * (Na[n] + Nb[n]) +
              F3[n] * Nc[n];

    // Split-step boundary absorber.
    sp.backward(vh, v);
    for (int i = 0; i < N; ++i)
      if (gamma[i] != 0.0) v[i] *= std::exp(-gamma[i] * h);
    sp.forward(v, vh);

    t += h;
    if (std::fabs(t - target) < 1e-12) {
      t = target;
      slices.push_back(v);
      ++next_cap;
    }
    if (!std::isfinite(v[N / 2]))
      throw std::runtime_error("solve_faminskii: solution lost finiteness");
  }

  PhiField phi;
  phi.L_ = L;
  phi.N_ = N;
  phi.delta_ = cfg.delta;
  phi.tol_ = cfg.tol;
  phi.certified_half_width_ = xs - 2.0;
  phi.times_ = times;
  phi.v_ = std::move(slices);
  phi.diag_.dt = dt0;

  // Boundary contamination: deviation amplitude near the edges at the end.
  {
    const auto& vf = phi.v_.back();
    double m = 0.0;
    for (int i = 0; i < N; ++i)
      if (std::fabs(x[i]) > 0.94 * L) m = std::max(m, std::fabs(vf[i]));
    phi.diag_.boundary_contamination = m;
  }

  // Interpolation certificate from the spectral fourth derivative.
  {
    std::vector<cplx> d4(nh);
    sp.forward(phi.v_.back(), d4);
    for (int n = 0; n < nh; ++n) d4[n] *= std::pow(k[n], 4);
    std::vector<double> v4;
    sp.backward(d4, v4);
    double m = 0.0;
    for (int i = 0; i < N; ++i)
      if (std::fabs(x[i]) < xs) m = std::max(m, std::fabs(v4[i]));
    phi.diag_.interp_error_est = 5.0 / 384.0 * std::pow(dx, 4) * m;
  }

  // PDE residual spot check at t_spot: the semi-discrete time derivative
  // (linear symbol + nonlinear term) against direct pointwise products.
  // Measures dealiasing and filter-induced deviation from the equation.
  if (cfg.spot_check) {
    int spot = -1;
    for (size_t i = 0; i < times.size(); ++i)
      if (std::fabs(times[i] - t_spot) < 1e-12) spot = static_cast<int>(i);
    if (spot >= 0) {
      const auto& vm = phi.v_[spot];
      std::vector<cplx> vmh(nh), d1h(nh), d3h(nh), rhs(nh);
      sp.forward(vm, vmh);
      nonlinear(vmh, t_spot, rhs);
      for (int n = 0; n < nh; ++n) {
        rhs[n] += Lsym[n] * vmh[n];
        d1h[n] = cplx(0.0, k[n]) * vmh[n];
        d3h[n] = cplx(0.0, -k[n] * k[n] * k[n]) * vmh[n];
      }
      std::vector<double> vt, vx, vxxx;
      sp.backward(rhs, vt);
      sp.backward(d1h, vx);
      sp.backward(d3h, vxxx);
      const double omt = 1.0 - t_spot;
      double worst = 0.0;
      const double wspot = std::min(phi.certified_half_width_, 30.0);
      for (int i = 0; i < N; ++i) {
        if (std::fabs(x[i]) > wspot) continue;
        const double S = cutoff_S(x[i], 0);
        const double S1 = cutoff_S(x[i], 1);
        const double S2 = cutoff_S(x[i], 2);
        const double S3 = cutoff_S(x[i], 3);
        const double b = -x[i] * S / omt;
        const double bt = -x[i] * S / (omt * omt);
        const double bx = (-S - x[i] * S1) / omt;
        const double bxxx = (-3.0 * S2 - x[i] * S3) / omt;
        const double r = bt + vt[i] + (b + vm[i]) * (bx + vx[i]) + bxxx +
                         vxxx[i];
        worst = std::max(worst, std::fabs(r));
      }
      phi.diag_.residual_spot = worst;
      if (worst > 1e6 * cfg.tol)
        throw std::runtime_error(
            "solve_faminskii: PDE residual spot check failed; raise N or "
            "lower delta");
    }
  }

  return phi;
}

bool PhiField::has_time(double t) const {
  for (double s : times_)
    if (std::fabs(s - t) < 1e-12) return true;
  return false;
}

double PhiField::slice_value(int i, double x) const {
  const double dx_ = dx();
  const double u = (x + L_) / dx_;
  int j = static_cast<int>(std::floor(u));
  j = std::clamp(j, 1, N_ - 3);
  const double s = u - j;
  const auto& v = v_[i];
  // 4-point cubic Lagrange on the uniform grid.
  const double c0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
  const double c1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  const double c2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
  const double c3 = (s + 1.0) * s * (s - 1.0) / 6.0;
  return c0 * v[j - 1] + c1 * v[j] + c2 * v[j + 1] + c3 * v[j + 2];
}

double PhiField::value(double x, double t, bool extended) const {
  if (t < -1e-15 || t > delta_ + 1e-12)
    throw std::out_of_range("PhiField::value: t outside the stored horizon");
  if (t <= 1e-15) return datum(x);

  const double xlo = -L_ + 2.0 * dx();
  const double xhi = L_ - 3.0 * dx();
  if (x < xlo || x > xhi) {
    if (!extended)
      throw std::out_of_range("PhiField::value: x outside the stored grid");
    return x < 0.0 ? -x / (1.0 - t) : 0.0;
  }

  // Exact slice hit avoids interpolation in time.
  const auto it = std::lower_bound(times_.begin(), times_.end(), t - 1e-12);
  if (it != times_.end() && std::fabs(*it - t) < 1e-12) {
    const int i = static_cast<int>(it - times_.begin());
    return background(x, t) + slice_value(i, x);
  }

  // Cubic interpolation in t over the four nearest slices.
  int j = static_cast<int>(std::upper_bound(times_.begin(), times_.end(), t) -
                           times_.begin());
  int base = std::clamp(j - 2, 0, static_cast<int>(times_.size()) - 4);
  double tv[4], fv[4];
  for (int m = 0; m < 4; ++m) {
    tv[m] = times_[base + m];
    fv[m] = slice_value(base + m, x);
  }
  double acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    double lm = 1.0;
    for (int q = 0; q < 4; ++q)
      if (q != m) lm *= (t - tv[q]) / (tv[m] - tv[q]);
    acc += lm * fv[m];
  }
  return background(x, t) + acc;
}

void PhiField::save(const std::string& path) const {
  nlohmann::json hdr;
  hdr["format_version"] = 1;
  hdr["L"] = L_;
  hdr["N"] = N_;
  hdr["delta"] = delta_;
  hdr["tol"] = tol_;
  hdr["certified_half_width"] = certified_half_width_;
  hdr["times"] = times_;
  hdr["diagnostics"] = {
      {"dt", diag_.dt},
      {"boundary_contamination", diag_.boundary_contamination},
      {"interp_error_est", diag_.interp_error_est},
      {"residual_spot", diag_.residual_spot}};
  const std::string h = hdr.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("PhiField::save: cannot open " + path);
  out.write("RASYPHI1", 8);
  const std::uint64_t hlen = h.size();
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(h.data(), h.size());
  for (const auto& slice : v_)
    out.write(reinterpret_cast<const char*>(slice.data()),
              slice.size() * sizeof(double));
  if (!out) throw std::runtime_error("PhiField::save: write failed");
}

PhiField PhiField::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("PhiField::load: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, "RASYPHI1", 8) != 0)
    throw std::runtime_error("PhiField::load: bad magic in " + path);
  std::uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  std::string h(hlen, '\0');
  in.read(h.data(), hlen);
  const auto hdr = nlohmann::json::parse(h);

  PhiField phi;
  phi.L_ = hdr.at("L").get<double>();
  phi.N_ = hdr.at("N").get<int>();
  phi.delta_ = hdr.at("delta").get<double>();
  phi.tol_ = hdr.at("tol").get<double>();
  phi.certified_half_width_ = hdr.at("certified_half_width").get<double>();
  phi.times_ = hdr.at("times").get<std::vector<double>>();
  const auto& d = hdr.at("diagnostics");
  phi.diag_.dt = d.at("dt").get<double>();
  phi.diag_.boundary_contamination =
      d.at("boundary_contamination").get<double>();
  phi.diag_.interp_error_est = d.at("interp_error_est").get<double>();
  phi.diag_.residual_spot = d.at("residual_spot").get<double>();

  phi.v_.assign(phi.times_.size(), std::vector<double>(phi.N_));
  for (auto& slice : phi.v_) {
    in.read(reinterpret_cast<char*>(slice.data()),
            slice.size() * sizeof(double));
  }
  if (!in) throw std::runtime_error("PhiField::load: truncated file " + path);
  return phi;
}

}  // namespace renasym::kdv
