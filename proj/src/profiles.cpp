#include "renasym/profiles.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace renasym::profiles {

namespace {

// log(1 + e^u) without overflow.
double softplus(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::fabs(u)));
}

// 1 / (1 + e^u) without overflow.
double logistic_neg(double u) {
  if (u > 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

double sech(double x) {
  const double e = std::exp(-std::fabs(x));
  return 2.0 * e / (1.0 + e * e);
}

// Certificate of algebraic order p for an exponential envelope A e^{-r|s|}.
// Past S >= p/r the envelope-to-power ratio is monotone decreasing, so
// C = A e^{-r S} S^p is sound.
TailCertificate exp_envelope_cert(double A, double r, double p, double S_min) {
  TailCertificate t;
  t.left_order = p;
  t.right_order = p;
  t.threshold = std::max({p / r, S_min, 1.0});
  t.constant = A * std::exp(-r * t.threshold) * std::pow(t.threshold, p) *
               (1.0 + 1e-12);
  return t;
}

// Solve the dense system M x = rhs by Gaussian elimination (tiny systems).
template <int N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> M,
                                  std::array<double, N> rhs) {
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    if (M[col][col] == 0.0)
      throw std::runtime_error("solve_dense: singular system");
    for (int r = col + 1; r < N; ++r) {
      const double m = M[r][col] / M[col][col];
      for (int c = col; c < N; ++c) M[r][c] -= m * M[col][c];
      rhs[r] -= m * rhs[col];
    }
  }
  std::array<double, N> x{};
  for (int r = N - 1; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < N; ++c) acc -= M[r][c] * x[c];
    x[r] = acc / M[r][r];
  }
  return x;
}

double polyval(const std::vector<double>& coef, double x) {
  double acc = 0.0;
  for (size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
  return acc;
}

std::vector<double> polyder(const std::vector<double>& coef) {
  std::vector<double> d;
  for (size_t i = 1; i < coef.size(); ++i) d.push_back(coef[i] * double(i));
  return d;
}

std::vector<double> polyint(const std::vector<double>& coef) {
  std::vector<double> p{0.0};
  for (size_t i = 0; i < coef.size(); ++i) p.push_back(coef[i] / double(i + 1));
  return p;
}

}  // namespace

InitialProfile make_smoothed_step(double lambda_minus, double lambda_plus,
                                  double width) {
  if (lambda_minus == lambda_plus)
    throw std::invalid_argument("make_smoothed_step: degenerate limits");
  if (!(width > 0.0))
    throw std::invalid_argument("make_smoothed_step: width must be positive");
  const double lm = lambda_minus, lp = lambda_plus, w = width;
  const double d = lm - lp;

  InitialProfile p;
  p.value = [=](double s) { return lp + d * logistic_neg(2.0 * s / w); };
  p.d1 = [=](double s) {
    const double c = sech(s / w);
    return -d / (2.0 * w) * c * c;
  };
  p.d2 = [=](double s) {
    const double c = sech(s / w);
    return d / (w * w) * std::tanh(s / w) * c * c;
  };
  p.d3 = [=](double s) {
    const double c2 = sech(s / w) * sech(s / w);
    const double t2 = std::tanh(s / w) * std::tanh(s / w);
    return d / (w * w * w) * (c2 * c2 - 2.0 * t2 * c2);
  };
  p.antiderivative = [=](double s) {
    return lp * s +
           d * (w / 2.0) * (std::log(2.0) - softplus(-2.0 * s / w));
  };
  p.limit_minus = lm;
  p.limit_plus = lp;
  const double ad = std::fabs(d);
  p.d1_tail = exp_envelope_cert(2.0 * ad / w, 2.0 / w, 8.0, 4.0 * w);
  p.d2_tail = exp_envelope_cert(4.0 * ad / (w * w), 2.0 / w, 8.0, 4.0 * w);
  p.d3_tail =
      exp_envelope_cert(12.0 * ad / (w * w * w), 2.0 / w, 8.0, 4.0 * w);
  p.kind = ProfileKind::kStep;
  p.family = "smoothed_step";
  p.width = w;
  return p;
}

InitialProfile make_ramp_profile(RampKind kind, double width) {
  if (!(width > 0.0))
    throw std::invalid_argument("make_ramp_profile: width must be positive");
  const double w = width;

  InitialProfile p;
  p.value = [=](double s) { return (w / 2.0) * softplus(-2.0 * s / w); };
  p.d1 = [=](double s) { return -logistic_neg(2.0 * s / w); };
  p.d2 = [=](double s) {
    const double c = sech(s / w);
    return c * c / (2.0 * w);
  };
  p.d3 = [=](double s) {
    const double c = sech(s / w);
    return -std::tanh(s / w) * c * c / (w * w);
  };
  p.limit_minus = std::numeric_limits<double>::infinity();
  p.limit_plus = 0.0;
  p.d1_tail = exp_envelope_cert(1.0, 2.0 / w, 8.0, 4.0 * w);
  p.d2_tail = exp_envelope_cert(2.0 / w, 2.0 / w, 8.0, 4.0 * w);
  p.d3_tail = exp_envelope_cert(4.0 / (w * w), 2.0 / w, 8.0, 4.0 * w);
  p.kind = ProfileKind::kWeakDiscontinuity;
  p.family = kind == RampKind::kBurgersT1 ? "ramp_burgers" : "ramp_kdv";
  p.width = w;
  return p;
}

InitialProfile make_power_tail_profile(double c_plus, double c_minus,
                                       double S) {
  if (!(S > 0.0))
    throw std::invalid_argument("make_power_tail_profile: S must be positive");

  // Degree-7 polynomial in sigma = s/S matching value..d3 of both tails.
  const double S2 = S * S, S3 = S2 * S, S4 = S3 * S, S5 = S4 * S;
  // Jets of the tails at s = +S and s = -S (d/ds form).
  const std::array<double, 4> right = {c_plus / S2, -2.0 * c_plus / S3,
                                       6.0 * c_plus / S4, -24.0 * c_plus / S5};
  const std::array<double, 4> left = {S + c_minus / S2, -1.0 + 2.0 * c_minus / S3,
                                      6.0 * c_minus / S4, 24.0 * c_minus / S5};

  std::array<std::array<double, 8>, 8> M{};
  std::array<double, 8> rhs{};
  // Row blocks: p^(m)(sigma0) = S^m * jet[m], sigma0 = -1, +1.
  for (int side = 0; side < 2; ++side) {
    const double sig = side == 0 ? -1.0 : 1.0;
    const auto& jet = side == 0 ? left : right;
    double Sm = 1.0;
    for (int m = 0; m < 4; ++m) {
      const int row = side * 4 + m;
      for (int j = 0; j < 8; ++j) {
        double fac = 1.0;
        for (int q = 0; q < m; ++q) fac *= double(j - q);
        M[row][j] = (j >= m) ? fac * std::pow(sig, j - m) : 0.0;
      }
      rhs[row] = Sm * jet[m];
      Sm *= S;
    }
  }
  const auto sol = solve_dense<8>(M, rhs);
  std::vector<double> c0(sol.begin(), sol.end());
  const std::vector<double> c1 = polyder(c0);
  const std::vector<double> c2 = polyder(c1);
  const std::vector<double> c3 = polyder(c2);
  const std::vector<double> cI = polyint(c0);  // antiderivative in sigma

  const double cp = c_plus, cm = c_minus;
  InitialProfile p;
  p.value = [=](double s) {
    if (s >= S) return cp / (s * s);
    if (s <= -S) return -s + cm / (s * s);
    return polyval(c0, s / S);
  };
  p.d1 = [=](double s) {
    if (s >= S) return -2.0 * cp / (s * s * s);
    if (s <= -S) return -1.0 - 2.0 * cm / (s * s * s);
    return polyval(c1, s / S) / S;
  };
  p.d2 = [=](double s) {
    if (std::fabs(s) >= S) {
      const double c = s > 0 ? cp : cm;
      return 6.0 * c / (s * s * s * s);
    }
    return polyval(c2, s / S) / S2;
  };
  p.d3 = [=](double s) {
    if (std::fabs(s) >= S) {
      const double c = s > 0 ? cp : cm;
      return -24.0 * c / (s * s * s * s * s);
    }
    return polyval(c3, s / S) / S3;
  };
  // int_0^s value: polynomial inside [-S, S], exact tail integrals outside.
  const double I_right = S * polyval(cI, 1.0);
  const double I_left = S * polyval(cI, -1.0);
  p.antiderivative = [=](double s) {
    if (s >= S) return I_right + cp * (1.0 / S - 1.0 / s);
    if (s <= -S)
      return I_left + 0.5 * (S2 - s * s) - cm / s - cm / S;
    return S * polyval(cI, s / S);
  };
  p.limit_minus = std::numeric_limits<double>::infinity();
  p.limit_plus = 0.0;
  const double cmax = std::max(std::fabs(cp), std::fabs(cm)) + 1e-300;
  p.d1_tail = {3.0, 3.0, 2.0 * cmax * (1.0 + 1e-12), S};
  p.d2_tail = {4.0, 4.0, 6.0 * cmax * (1.0 + 1e-12), S};
  p.d3_tail = {5.0, 5.0, 24.0 * cmax * (1.0 + 1e-12), S};
  p.kind = ProfileKind::kWeakDiscontinuity;
  p.family = "power_tail";
  p.width = S;
  return p;
}

InitialProfile make_slow_tail_profile(double c) {
  InitialProfile base = make_ramp_profile(RampKind::kKdvT2, 1.0);
  InitialProfile p;
  p.value = [=, v = base.value](double s) {
    return v(s) + 0.5 * c * std::log1p(s * s);
  };
  p.d1 = [=, d = base.d1](double s) { return d(s) + c * s / (1.0 + s * s); };
  p.d2 = [=, d = base.d2](double s) {
    const double q = 1.0 + s * s;
    return d(s) + c * (1.0 - s * s) / (q * q);
  };
  p.d3 = [=, d = base.d3](double s) {
    const double q = 1.0 + s * s;
    return d(s) + c * (2.0 * s * s * s - 6.0 * s) / (q * q * q);
  };
  p.limit_minus = std::numeric_limits<double>::infinity();
  p.limit_plus = std::numeric_limits<double>::infinity();  // log growth
  // Certificates intentionally invalid: the d1 deviation decays only like 1/s.
  p.kind = ProfileKind::kWeakDiscontinuity;
  p.family = "slow_tail";
  p.width = 1.0;
  return p;
}

namespace {

HypothesisCheck scaled_tail_check(const std::string& name,
                                  const std::function<double(double)>& f,
                                  double power, bool both_sides = true) {
  HypothesisCheck c;
  c.name = name;
  auto scan = [&](double lo, double hi, int n) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double s = lo * std::pow(hi / lo, double(i) / n);
      const double g = std::fabs(f(s)) * std::pow(s, power);
      const double gm = both_sides
                            ? std::fabs(f(-s)) * std::pow(s, power)
                            : 0.0;
      m = std::max({m, g, gm});
    }
    return m;
  };
  c.inner_max = scan(10.0, 1e3, 24);
  c.outer_max = scan(1e4, 1e6, 24);
  c.bounded = c.outer_max <= 1.5 * c.inner_max + 1e-12;
  return c;
}

}  // namespace

HypothesisReport verify_hypotheses(const InitialProfile& p, Hypotheses which) {
  HypothesisReport r;
  auto d1_dev = [&p](double s) {
    return p.d1(s) + (s < 0.0 ? 1.0 : 0.0);
  };
  auto value_dev = [&p](double s) {
    return p.value(s) + (s < 0.0 ? s : 0.0);
  };
  switch (which) {
    case Hypotheses::kT1:
      r.checks.push_back(scaled_tail_check("|d1 + Theta(-s)| s^3", d1_dev, 3.0));
      r.checks.push_back(scaled_tail_check("|d2| s^4", p.d2, 4.0));
      break;
    case Hypotheses::kT2:
      r.checks.push_back(
          scaled_tail_check("|value + s Theta(-s)| s^2", value_dev, 2.0));
      r.checks.push_back(scaled_tail_check("|d1 + Theta(-s)| s^3", d1_dev, 3.0));
      break;
    case Hypotheses::kLargeGradient: {
      HypothesisCheck c;
      c.name = "finite limits";
      const double probe = 1e6;
      c.inner_max = std::fabs(p.value(probe) - p.limit_plus);
      c.outer_max = std::fabs(p.value(-probe) - p.limit_minus);
      c.bounded = p.kind == ProfileKind::kStep && c.inner_max <= 1e-6 &&
                  c.outer_max <= 1e-6;
      r.checks.push_back(c);
      break;
    }
  }
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.bounded;
  return r;
}

}  // namespace renasym::profiles
