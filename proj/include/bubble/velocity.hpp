/**
 * @file velocity.hpp
 * @brief Interfacial Stokes velocity from the single-layer potential, normal/tangential speeds,
 * the linear-part multiplier of the normal speed, and the closed-form kernel constants.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bubble/error.hpp"
#include "bubble/fourier.hpp"
#include "bubble/geometry.hpp"
#include "bubble/quadrature.hpp"

namespace bubble {

struct VelocityField {
  TrigSeries u_conj;       ///< u1 - i u2 on the interface (complex series)
  TrigSeries U;            ///< normal speed, z_t = U i e^{i(alpha+theta)} + T e^{i(alpha+theta)}
  TrigSeries T;            ///< tangential speed with T(0) = 0
  double L = 0.0;
  double net_force = 0.0;  ///< |int z''| in length units; zero for a closed curve
  double tail = 0.0;       ///< largest coefficient of e^{i phi} above m/4
};

/// Largest |coefficient| of e^{i phi} over m/4 < |k| < m/2: how well the grid resolves the curve.
inline double spectral_tail(const TrigSeries& phi, int m) {
  const TrigSeries P = analyze(expi_minus_one(phi, m), m / 2 - 1, false);
  double tail = 0.0;
  for (int k = m / 4 + 1; k <= m / 2 - 1; ++k) tail = std::max({tail, std::abs(P[k]), std::abs(P[-k])});
  return tail;
}

/**
 * @brief Samples of u = u1 + i u2 at the grid nodes alpha_i = 2 pi i/m.
 *
 * u(alpha) = (2pi/L)(gamma/4pi) int z''(beta) . G(z(alpha) - z(beta)) dbeta with
 * G = -log|w| I + w w^T/|w|^2. log|w| = log|2 sin((alpha-beta)/2)| + rho; the first part uses the
 * product weights, rho and the rank-one part are smooth and use the trapezoid rule.
 */
inline std::vector<cplx> slp_velocity_samples(const InterfaceState& s, const QuadratureGrid& grid, double L,
                                              double* net_force = nullptr) {
  const int m = grid.m;
  detail::require_grid(s.phi.N(), m, "slp_velocity");
  const double scale = L / kTwoPi;
  const double h = kTwoPi / m;

  auto p = synthesize_real(s.phi, m);
  auto pa = synthesize_real(derivative(s.phi), m);
  std::vector<cplx> tau(m), zpp(m);
  for (int j = 0; j < m; ++j) {
    tau[j] = std::polar(1.0, kTwoPi * j / m + s.theta0 + p[j]);
    zpp[j] = scale * cplx(0.0, 1.0 + pa[j]) * tau[j];
  }

  // Curve by spectral antidifferentiation of z_alpha = scale * tau.
  std::vector<cplx> za(m);
  for (int j = 0; j < m; ++j) za[j] = scale * tau[j];
  const TrigSeries zh = analyze(za, m / 2 - 1, false);
  TrigSeries Z(m / 2 - 1, false);
  for (int k = 1; k <= m / 2 - 1; ++k) {
    Z.set(k, zh[k] / cplx(0.0, k));
    Z.set(-k, zh[-k] / cplx(0.0, -k));
  }
  const auto z = synthesize(Z, m);

  std::vector<double> sin2(m);
  for (int d = 0; d < m; ++d) {
    const double sd = std::sin(kPi * d / m);
    sin2[d] = 4.0 * sd * sd;
  }

  // Diagonal limits use the tangent of the integrated (closed) curve, which differs from
  // scale * tau by the closure defect zh[0].
  std::vector<cplx> acc(m, cplx(0.0));
  for (int i = 0; i < m; ++i) {
    cplx a = 0.0;
    for (int j = 0; j < m; ++j) a += grid.weights_log[(i - j + m) % m] * zpp[j];
    const cplx t = za[i] - zh[0];
    acc[i] = a - h * std::log(std::abs(t)) * zpp[i] + h * t * (std::conj(t) * zpp[i]).real() / std::norm(t);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const cplx w = z[i] - z[j];
      const double d2 = std::norm(w);
      const double rho = 0.5 * std::log(d2 / sin2[j - i]);
      const cplx wn = w / d2;
      acc[i] += h * (wn * (std::conj(w) * zpp[j]).real() - rho * zpp[j]);
      acc[j] += h * (wn * (std::conj(w) * zpp[i]).real() - rho * zpp[i]);
    }
  }

  const double c = s.gamma / (2.0 * L);  // (2pi/L)(gamma/4pi)
  for (auto& v : acc) v *= c;
  if (net_force) {
    cplx f = 0.0;
    for (const auto& v : zpp) f += v;
    *net_force = std::abs(f) * h;
  }
  return acc;
}

/// U = Re(u_conj i e^{i(alpha+theta)}) on the m-point grid, returned with band m/2 - 1.
inline TrigSeries normal_speed(const InterfaceState& s, const TrigSeries& u_conj, int m) {
  const auto uc = synthesize(u_conj, m);
  auto p = synthesize_real(s.phi, m);
  std::vector<double> U(m);
  for (int j = 0; j < m; ++j)
    U[j] = (uc[j] * cplx(0.0, 1.0) * std::polar(1.0, kTwoPi * j / m + s.theta0 + p[j])).real();
  return analyze(U, m / 2 - 1);
}

/// T = M((1 + phi_alpha) U), band of U.
inline TrigSeries tangential_speed(const InterfaceState& s, const TrigSeries& U) {
  TrigSeries g = derivative(s.phi);
  g.set(0, 1.0);
  return operator_M(product(g, U, U.N()));
}

/**
 * @brief Velocity, normal and tangential speed of the interface.
 * @throws ResolutionError if e^{i phi} has coefficients above tol_resolution beyond m/4.
 */
inline VelocityField slp_velocity(const InterfaceState& s, const QuadratureGrid& grid, double tol_resolution = 1e-8,
                                  double L = 0.0) {
  s.validate();
  if (L == 0.0) L = length_of(s);
  VelocityField out;
  out.L = L;
  out.tail = spectral_tail(s.phi, grid.m);
  if (out.tail > tol_resolution)
    throw ResolutionError("slp_velocity: grid of " + std::to_string(grid.m) + " points under-resolves the interface (tail " +
                          std::to_string(out.tail) + ")");
  auto u = slp_velocity_samples(s, grid, L, &out.net_force);
  for (auto& v : u) v = std::conj(v);
  out.u_conj = analyze(u, grid.m / 2 - 1, false);
  out.U = normal_speed(s, out.u_conj, grid.m);
  out.T = tangential_speed(s, out.U);
  return out;
}

namespace detail {

/// int_0^1 (s-1)^p e^{ics} ds for p in {0, 1}.
inline cplx s_moment(double c, int p) {
  const cplx ic(0.0, c);
  if (std::abs(c) < 0.5) {
    cplx term = 1.0, sum = 0.0;
    for (int n = 0; n < 30; ++n) {
      if (n > 0) term *= ic / double(n);
      sum += (p == 0) ? term / double(n + 1) : -term / double((n + 1) * (n + 2));
    }
    return sum;
  }
  const cplx e = std::exp(ic);
  const cplx s0 = (e - 1.0) / ic;
  if (p == 0) return s0;
  return e / ic - (e - 1.0) / (ic * ic) - s0;
}

/// e^{i b} - 1 without cancellation.
inline cplx expm1_i(double b) {
  const double sh = std::sin(0.5 * b);
  return cplx(-2.0 * sh * sh, std::sin(b));
}

/// The seven beta-kernels of the linear part of u1 - i u2 at mode k (before the gamma/4pi factor).
inline std::array<cplx, 7> linear_kernels(int k, double b) {
  const cplx e = std::polar(1.0, b);
  const cplx em = expm1_i(b);
  const cplx ek = std::polar(1.0, -k * b);
  const cplx Sm0 = ek * s_moment(b * (k - 1), 0);
  const cplx Sp0 = ek * s_moment(b * (k + 1), 0);
  const cplx Sm1 = ek * s_moment(b * (k - 1), 1);
  const cplx Sp1 = ek * s_moment(b * (k + 1), 1);
  const cplx I(0.0, 1.0);
  const cplx ik(0.0, k);
  // e^{2ib} - 1 - 2ib, expanded for small b
  cplx q;
  if (std::abs(b) < 1e-2) {
    cplx t = 1.0, sum = 0.0;
    const cplx x = 2.0 * I * b;
    for (int n = 2; n < 14; ++n) {
      t = 1.0;
      for (int r = 1; r <= n; ++r) t *= x / double(r);
      sum += t;
    }
    q = sum;
  } else {
    q = e * e - 1.0 - 2.0 * I * b;
  }
  return {
      -e * (I * em + b * (1.0 + e)) / (2.0 * em) * Sm0,
      I * q / (2.0 * em * em) * Sp0,
      -b * e / 2.0 * Sm1,
      -b * (1.0 + e) / (2.0 * em) * Sp1,
      -I * b * e / 2.0 * Sm1 * ik,
      I * b * (1.0 + e) / (2.0 * em) * Sp1 * ik,
      -I * (-1.0 + 2.0 * e + e * e) / (2.0 * em) * ek,
  };
}

}  // namespace detail

/// Per-kernel integrals (gamma/4pi) PV int K_j(k, beta) dbeta, j = 1..7.
inline std::array<cplx, 7> kernel_mode_integrals(int k, double gamma) {
  std::array<cplx, 7> out{};
  for (int j = 0; j < 7; ++j) {
    auto f = [k, j](double b) { return detail::linear_kernels(k, b)[j]; };
    out[j] = gamma / (4.0 * kPi) * quad::pv_integrate(f, 1e-12, std::max(8, 2 * std::abs(k)));
  }
  return out;
}

/**
 * @brief Multiplier of the linear part of the normal speed: F(U1)(k) = m1(k) phi_hat(k).
 *
 * The complex kernel sum c(k) gives u1 - i u2; taking the real part of i e^{i alpha} times it
 * pairs modes k and -k: m1(k) = (c(k) + conj(c(-k)))/2.
 */
inline cplx linear_multiplier(int k, double gamma) {
  if (k == 0) return 0.0;
  auto sum = [](int kk) {
    auto f = [kk](double b) {
      cplx t = 0.0;
      for (const auto& v : detail::linear_kernels(kk, b)) t += v;
      return t;
    };
    return quad::pv_integrate(f, 1e-12, std::max(8, 2 * std::abs(kk)));
  };
  const double c = gamma / (4.0 * kPi);
  return 0.5 * c * (sum(k) + std::conj(sum(-k)));
}

/// U1 for a real mean-free phi.
inline TrigSeries linear_velocity_U1(const TrigSeries& phi, double gamma) {
  if (!phi.is_real()) throw ConfigError("linear_velocity_U1: phi must be real");
  if (phi[0] != cplx(0.0)) throw ConfigError("linear_velocity_U1: phi must have zero mean");
  TrigSeries out(phi.N());
  for (int k = 1; k <= phi.N(); ++k)
    if (phi[k] != cplx(0.0)) out.set(k, linear_multiplier(k, gamma) * phi[k]);
  return out;
}

/// C_n = (gamma/4pi)((n+1)(pi/2)^n (1/2) sqrt(1+pi^2/4) pi^2 + 2pi).
inline double kernel_constants(int n, double gamma = 1.0) {
  if (n < 0) throw ConfigError("kernel_constants: n must be nonnegative");
  const double root = std::sqrt(1.0 + kPi * kPi / 4.0);
  return gamma / (4.0 * kPi) * ((n + 1) * std::pow(kPi / 2.0, n) * 0.5 * root * kPi * kPi + kTwoPi);
}

/// Mode bounds of the seven kernels; entries 5 and 6 multiply |k| |phi_hat(k)|, the rest |phi_hat(k)|.
inline std::array<double, 7> ej_bounds(double gamma = 1.0) {
  const double root = std::sqrt(1.0 + kPi * kPi / 4.0);
  const double pi2 = kPi * kPi;
  const std::array<double, 7> raw = {
      kTwoPi + pi2 / 4.0 * root,
      (0.5 * root * kTwoPi + pi2) + (2.0 * (kPi / 2.0) * 0.5 * root * kTwoPi + pi2),
      pi2 / 2.0,
      0.5 * root * pi2 + kTwoPi,
      pi2 / 2.0,
      0.5 * root * pi2 + kTwoPi,
      0.5 * root * 1.5 * kTwoPi + 0.5 * 4.0 * 5.0,
  };
  std::array<double, 7> out{};
  for (int j = 0; j < 7; ++j) out[j] = gamma / (4.0 * kPi) * raw[j];
  return out;
}

/// (H3, H4) with |F(U1)(k)| <= (H3 + H4 |k|) |phi_hat(k)|.
inline std::pair<double, double> H34(double gamma = 1.0) {
  const auto b = ej_bounds(gamma);
  return {b[0] + b[1] + b[2] + b[3] + b[6], b[4] + b[5]};
}

/**
 * @brief (gamma/4pi) int I_n(...) (-i beta e^{2i beta})/(1 - e^{i beta}) dbeta, the integral bounded by C_n.
 *
 * @param k1, k2   outer phase e^{-i beta (k1 - k2)}
 * @param diffs    the n differences entering the product factors
 * @param klast    index in the final (s-1)-weighted integral
 */
inline cplx product_kernel_integral(int k1, int k2, const std::vector<int>& diffs, int klast, double gamma = 1.0) {
  auto f = [&](double b) -> cplx {
    const cplx e = std::polar(1.0, b);
    const cplx one_minus_e = -detail::expm1_i(b);
    cplx prod = 1.0;
    for (int d : diffs)
      prod *= cplx(0.0, b) * e / one_minus_e * std::polar(1.0, -d * b) * detail::s_moment(b * (d - 1), 0);
    const cplx last = std::polar(1.0, -klast * b) * detail::s_moment(b * (klast - 1), 1);
    const cplx weight = cplx(0.0, -b) * e * e / one_minus_e;
    return prod * std::polar(1.0, -b * (k1 - k2)) * last * weight;
  };
  const int spread = std::abs(k1 - k2) + std::abs(klast) + 2;
  return gamma / (4.0 * kPi) * quad::pv_integrate(f, 1e-12, std::max(8, spread));
}

}  // namespace bubble
