/**
 * @file spectral_analysis.hpp
 * @brief Closed-form multipliers of the linearized evolution and independent quadrature checks for them.
 *
 * Every singular integral here is a principal value over [-pi, pi] with a simple pole at beta = 0.
 * Two routes are provided: adaptive quadrature of the folded integrand, and, for integrands of the form
 * (trigonometric polynomial)/(e^{i beta} - 1), an exact algebraic evaluation through the Abel series.
 */
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "bubble/dynamics.hpp"
#include "bubble/error.hpp"
#include "bubble/fourier.hpp"
#include "bubble/quadrature.hpp"

namespace bubble {

namespace detail {

inline void require_nonzero(int k, const char* who) {
  if (k == 0) throw ConfigError(std::string(who) + ": k = 0 is not allowed");
}

inline void require_two(int k, const char* who) {
  if (std::abs(k) < 2) throw ConfigError(std::string(who) + ": requires |k| >= 2");
}

inline cplx E(double b) { return std::polar(1.0, b); }

/// (e^{-i b} - e^{-i b k})/b, by series near 0.
inline cplx diff_quotient(double b, double p, double q) {
  // (e^{i p b} - e^{i q b})/b
  if (std::abs(b) < 1e-3) {
    cplx sum = 0.0, tp = 1.0, tq = 1.0;
    for (int n = 1; n < 12; ++n) {
      tp *= cplx(0.0, p * b) / double(n);
      tq *= cplx(0.0, q * b) / double(n);
      sum += (tp - tq) / b;
    }
    return sum;
  }
  return (std::polar(1.0, p * b) - std::polar(1.0, q * b)) / b;
}

/// b + i(e^{ib} - 1) = (b - sin b) - 2i sin^2(b/2), accurate as b -> 0.
inline cplx b_plus_i_em(double b) {
  double bs;
  if (std::abs(b) < 0.1) {
    double term = b * b * b / 6.0;
    bs = 0.0;
    for (int n = 1; n < 8; ++n) {
      bs += term;
      term *= -b * b / double((2 * n + 2) * (2 * n + 3));
    }
  } else {
    bs = b - std::sin(b);
  }
  const double sh = std::sin(0.5 * b);
  return cplx(bs, -2.0 * sh * sh);
}

inline cplx pv(const std::function<cplx(double)>& f, int k) {
  return quad::pv_integrate(f, 1e-12, std::max(8, 2 * std::abs(k) + 4));
}

}  // namespace detail

inline double J1_analytic(int k) {
  detail::require_nonzero(k, "J1_analytic");
  if (std::abs(k) == 1) return 0.0;
  return -kPi / std::abs(k);
}

inline double J2_analytic(int k) {
  detail::require_nonzero(k, "J2_analytic");
  if (std::abs(k) == 1) return 0.0;
  const double a = std::abs(k);
  return -kPi * (a - 1.0 / a);
}

/// -(2pi/L)(gamma/4pi) pi |k| for |k| > 1, 0 for |k| = 1.
inline double multiplier_analytic(int k, double L, double gamma) {
  detail::require_nonzero(k, "multiplier_analytic");
  if (!(L > 0.0)) throw ConfigError("multiplier_analytic: L must be positive");
  if (std::abs(k) == 1) return 0.0;
  return -(kTwoPi / L) * (gamma / (4.0 * kPi)) * kPi * std::abs(k);
}

/// PV int -e^{-ib} i (1 + e + e^2 + e^3) e^{-ikb} / (4(e - 1)), times (ik - i/k).
inline cplx J2_quadrature(int k) {
  detail::require_two(k, "J2_quadrature");
  using detail::E;
  auto f = [k](double b) {
    const cplx e = E(b);
    return -std::conj(e) * cplx(0.0, 1.0) * (1.0 + e + e * e + e * e * e) * E(-k * b) / (4.0 * detail::expm1_i(b));
  };
  return detail::pv(f, k) * cplx(0.0, k - 1.0 / k);
}

/// Ten-integral definition of J1.
inline cplx J1_quadrature(int k) {
  detail::require_two(k, "J1_quadrature");
  using detail::E;
  const double kk = k;
  const cplx I(0.0, 1.0);
  auto em = [](double b) { return detail::expm1_i(b); };
  auto P1 = [](cplx e) { return -1.0 - 2.0 * e + e * e; };
  auto P2 = [](cplx e) { return -1.0 + 2.0 * e + e * e; };
  auto P3 = [](cplx e) { return 1.0 + 2.0 * e - e * e; };
  std::vector<std::pair<std::function<cplx(double)>, cplx>> terms;
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     // i - (i + b) e = -(b + i(e - 1)) - b (e - 1)
                     const cplx A = -(detail::b_plus_i_em(b) + b * em(b)) * P1(e) / (4.0 * em(b) * em(b));
                     return A * detail::diff_quotient(b, -1.0, -kk);
                   },
                   kk / (kk - 1) + 1.0 / (kk * (1 - kk))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return std::conj(e) * P2(e) * detail::b_plus_i_em(b) / (4.0 * em(b) * em(b)) *
                            detail::diff_quotient(b, 1.0, -kk);
                   },
                   kk / (1 + kk) - 1.0 / (kk * (1 + kk))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return -I * P1(e) / (4.0 * em(b)) * E(-b * (1 + kk)) * detail::diff_quotient(b, kk, 1.0);
                   },
                   -kk * kk / ((kk - 1) * (kk - 1)) + 1.0 / ((kk - 1) * (kk - 1))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return -I * P1(e) * E(-b * kk) / (4.0 * em(b));
                   },
                   I * kk * kk / (kk - 1) - I / (kk - 1)});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return std::conj(e) * I * P2(e) / (4.0 * em(b)) * E(-b * kk) *
                            detail::diff_quotient(b, 1.0 + kk, 0.0);
                   },
                   -kk * kk / ((1 + kk) * (1 + kk)) + 1.0 / ((1 + kk) * (1 + kk))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return std::conj(e) * P2(e) * E(-b * kk) / (4.0 * em(b));
                   },
                   -kk * kk / (1 + kk) + 1.0 / (1 + kk)});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return P3(e) / (4.0 * em(b)) * E(-b * (1 + kk)) * detail::diff_quotient(b, kk, 1.0);
                   },
                   I * kk / ((kk - 1) * (kk - 1)) - I / (kk * (kk - 1) * (kk - 1))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return P3(e) * E(-b * kk) / (4.0 * em(b));
                   },
                   kk / (kk - 1) - 1.0 / (kk * (kk - 1))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return -std::conj(e) * P2(e) / (4.0 * em(b)) * E(-b * kk) *
                            detail::diff_quotient(b, 1.0 + kk, 0.0);
                   },
                   I * kk / ((1 + kk) * (1 + kk)) - I / (kk * (1 + kk) * (1 + kk))});
  terms.push_back({[&](double b) {
                     const cplx e = E(b);
                     return -std::conj(e) * P2(e) * E(-b * kk) / (4.0 * em(b));
                   },
                   kk / (1 + kk) - 1.0 / (kk * (1 + kk))});
  cplx total = 0.0;
  for (const auto& [f, w] : terms) total += w * detail::pv(f, k);
  return total;
}

struct GConstants {
  cplx g2, g3, g5, g6, g7, g8;
};

inline GConstants g_constants_analytic(int k) {
  detail::require_two(k, "g_constants_analytic");
  const double h = 0.5 * kPi;
  return {-h * k, -h * k, cplx(0.0, -h), -h, -h, h};
}

inline GConstants g_constants_quadrature(int k) {
  if (k < 2) throw ConfigError("g_constants_quadrature: requires k >= 2");
  using detail::E;
  const double kk = k;
  const cplx I(0.0, 1.0);
  auto em = [](double b) { return detail::expm1_i(b); };
  GConstants g;
  g.g2 = detail::pv(
      [&](double b) {
        const cplx e = E(b);
        return -e * (-1.0 - 2.0 * e + e * e) / (4.0 * em(b) * em(b)) * b * detail::diff_quotient(b, -1.0, -kk);
      },
      k);
  g.g3 = detail::pv(
      [&](double b) {
        const cplx e = E(b);
        return std::conj(e) * (-1.0 + 2.0 * e + e * e) * b / (4.0 * em(b) * em(b)) * detail::diff_quotient(b, 1.0, -kk);
      },
      k);
  g.g5 = detail::pv([&](double b) { const cplx e = E(b); return -I * (-1.0 - 2.0 * e + e * e) * E(-b * kk) / (4.0 * em(b)); }, k);
  g.g6 = detail::pv([&](double b) { const cplx e = E(b); return std::conj(e) * (-1.0 + 2.0 * e + e * e) * E(-b * kk) / (4.0 * em(b)); }, k);
  g.g7 = detail::pv([&](double b) { const cplx e = E(b); return (1.0 + 2.0 * e - e * e) * E(-b * kk) / (4.0 * em(b)); }, k);
  g.g8 = detail::pv([&](double b) { const cplx e = E(b); return -std::conj(e) * (-1.0 + 2.0 * e + e * e) * E(-b * kk) / (4.0 * em(b)); }, k);
  return g;
}

/// J1 assembled from the g-constants.
inline cplx j1_from_g(int k, const GConstants& g) {
  const double kk = k;
  return (kk + 1) / kk * g.g2 + (kk - 1) / kk * g.g3 + cplx(0.0, kk + 1) * g.g5 + (1 - kk) * g.g6 +
         (kk + 1) / kk * g.g7 + (kk - 1) / kk * g.g8;
}

/**
 * @brief Exact PV of sum_n a_n e^{i n b} e^{-i k b}/(e^{i b} - 1) over [-pi, pi].
 *
 * Abel: 1/(r e^{ib} - 1) = -sum_{p>=0} r^p e^{ipb}, so a single term e^{-i m b} integrates to
 * -2 pi r^m [m >= 0]; the limit r -> 1 is taken exactly. The Abel value differs from the symmetric
 * principal value by the half residue pi h(0), which is added back.
 */
inline cplx abel_pole_integral(const std::map<int, cplx>& a, int k) {
  cplx abel = 0.0, h0 = 0.0;
  for (const auto& [n, c] : a) {
    if (k - n >= 0) abel += -kTwoPi * c;
    h0 += c;
  }
  return abel + kPi * h0;
}

inline cplx J2_abel(int k) {
  detail::require_two(k, "J2_abel");
  const cplx c(0.0, -0.25);
  return abel_pole_integral({{-1, c}, {0, c}, {1, c}, {2, c}}, k) * cplx(0.0, k - 1.0 / k);
}

/// g5..g8 by the Abel route; g2, g3 carry a 1/b factor and have no such form.
inline GConstants g_constants_abel(int k) {
  if (k < 2) throw ConfigError("g_constants_abel: requires k >= 2");
  const cplx I(0.0, 1.0);
  GConstants g;
  g.g2 = g.g3 = std::nan("");
  g.g5 = abel_pole_integral({{0, 0.25 * I}, {1, 0.5 * I}, {2, -0.25 * I}}, k);
  g.g6 = abel_pole_integral({{-1, -0.25}, {0, 0.5}, {1, 0.25}}, k);
  g.g7 = abel_pole_integral({{0, 0.25}, {1, 0.5}, {2, -0.25}}, k);
  g.g8 = abel_pole_integral({{-1, 0.25}, {0, -0.5}, {1, -0.25}}, k);
  return g;
}

/// A(x) = (1 - sqrt(1 - (pi/2)(e^{2x} - 1)))/x on 0 < x < log(1 + 2/pi)/2.
inline double A_of(double x) {
  const double xmax = 0.5 * std::log1p(2.0 / kPi);
  if (!(x > 0.0 && x < xmax)) throw ConfigError("A_of: x outside (0, log(1+2/pi)/2)");
  const double q = length_bound_q(x);
  // 1 - sqrt(1 - q) = q / (1 + sqrt(1 - q)) avoids cancellation for small x.
  return q / (1.0 + std::sqrt(1.0 - q)) / x;
}

/// A1(x) = 1/sqrt(1 + (pi/2)(e^{2x} - 1)), x >= 0.
inline double A1_of(double x) {
  if (!(x >= 0.0)) throw ConfigError("A1_of: x must be nonnegative");
  return 1.0 / std::sqrt(1.0 + length_bound_q(x));
}

struct MultiplierReport {
  int k = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double abs_err = 0.0;
  std::string method;  ///< "analytic", "pv_quadrature" or "fd_linearization"
  bool passed = false;
};

inline void to_json(nlohmann::json& j, const MultiplierReport& r) {
  j = nlohmann::json{{"k", r.k},         {"analytic", r.analytic}, {"numeric", r.numeric},
                     {"abs_err", r.abs_err}, {"method", r.method},     {"passed", r.passed}};
}

struct LinearizationCheck {
  int kmax = 6;
  double gamma = 1.0;
  double R = 1.0;
  double eps = 1e-6;
  double tol_quadrature = 1e-8;
  double tol_fd_rel = 1e-4;
  double tol_zero = 1e-6;
  SimConfig sim{};  ///< N and m of the finite-difference right-hand side
};

/**
 * @brief Compares the closed-form multiplier for k = 1..kmax against PV quadrature of J1 + J2 and
 * against a finite-difference linearization of the full nonlinear right-hand side.
 */
inline std::vector<MultiplierReport> verify_linearization(const LinearizationCheck& c) {
  if (c.kmax < 1) throw ConfigError("verify_linearization: kmax must be >= 1");
  const double L = kTwoPi * c.R;
  SimConfig sim = c.sim;
  sim.N = std::max(sim.N, c.kmax + 2);
  sim.m = std::max(sim.m, 4 * sim.N);
  std::vector<MultiplierReport> out;
  for (int k = 1; k <= c.kmax; ++k) {
    const double analytic = multiplier_analytic(k, L, c.gamma);

    MultiplierReport q;
    q.k = k;
    q.method = "pv_quadrature";
    q.analytic = analytic;
    // J1 has a removable 0 * inf at k = 1; there the U1 kernel multiplier (also PV quadrature) is used.
    const cplx num = k == 1 ? (kTwoPi / L) * cplx(0.0, k - 1.0 / k) * linear_multiplier(k, c.gamma)
                            : (kTwoPi / L) * (c.gamma / (4.0 * kPi)) * (J1_quadrature(k) + J2_quadrature(k));
    q.numeric = num.real();
    q.abs_err = std::abs(q.analytic - num);
    q.passed = q.abs_err <= (k == 1 ? c.tol_zero : c.tol_quadrature);
    out.push_back(q);

    TrigSeries d(k);
    d.set(k, 1.0);
    const TrigSeries lin = linearized_rhs_fd(d, c.eps, c.R, c.gamma, sim);
    MultiplierReport f;
    f.k = k;
    f.method = "fd_linearization";
    f.analytic = analytic;
    f.numeric = lin[k].real();
    f.abs_err = std::abs(f.analytic - f.numeric);
    f.passed = k == 1 ? f.abs_err <= c.tol_zero : f.abs_err <= c.tol_fd_rel * std::abs(analytic);
    out.push_back(f);
  }
  return out;
}

}  // namespace bubble
