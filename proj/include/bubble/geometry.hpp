/**
 * @file geometry.hpp
 * @brief Interface state in tangent-angle/length form and its physical curve.
 *
 * The curve is z_alpha = (L/2pi) e^{i(alpha + theta)}, theta = theta0 + phi, with phi real and
 * mean free. L is not evolved; it follows from phi through conservation of the enclosed volume pi R^2.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <utility>
#include <vector>

#include "bubble/error.hpp"
#include "bubble/fourier.hpp"

namespace bubble {

struct InterfaceState {
  TrigSeries phi;       ///< real, zero mode 0
  double theta0 = 0.0;  ///< zero mode of theta (radians)
  double R = 1.0;       ///< radius of the circle with the same volume
  double gamma = 1.0;   ///< surface tension
  double t = 0.0;

  void validate() const {
    if (!phi.is_real()) throw ConfigError("state: phi must be a real series");
    if (phi[0] != cplx(0.0)) throw ConfigError("state: phi must have zero mean");
    if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("state: R must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("state: gamma must be positive");
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("state: t must be nonnegative");
    if (!std::isfinite(theta0)) throw ConfigError("state: theta0 must be finite");
  }
};

/// Grid used for quantities built from e^{i phi}, which is not band limited.
inline int geometry_grid_size(int N) { return good_fft_size(std::max(64, 8 * N)); }

/// Samples of e^{i phi} - 1, written so that phi = 0 gives exactly 0.
inline std::vector<cplx> expi_minus_one(const TrigSeries& phi, int m) {
  auto p = synthesize_real(phi, m);
  std::vector<cplx> out(m);
  for (int j = 0; j < m; ++j) {
    const double s = std::sin(0.5 * p[j]);
    out[j] = cplx(-2.0 * s * s, std::sin(p[j]));
  }
  return out;
}

namespace detail {

/// Coefficient table over k = -K..K with zero outside.
struct Spectrum {
  int K = 0;
  std::vector<cplx> c;
  explicit Spectrum(int K_) : K(K_), c(2 * K_ + 1, cplx(0.0)) {}
  cplx operator[](int k) const { return (k < -K || k > K) ? cplx(0.0) : c[k + K]; }
  cplx& at(int k) { return c[k + K]; }
};

/// int_{-pi}^{pi} A(alpha) int_0^alpha B(eta) deta dalpha from the coefficients of A and B.
inline cplx nested_integral(const Spectrum& A, const Spectrum& B) {
  cplx first = 0.0;
  if (B[0] != cplx(0.0)) {
    for (int j = -A.K; j <= A.K; ++j) {
      if (j == 0) continue;
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      first += A[j] * (kTwoPi * sign) / cplx(0.0, j);
    }
    first *= B[0];
  }
  cplx second = 0.0;
  for (int k = -B.K; k <= B.K; ++k) {
    if (k == 0 || B[k] == cplx(0.0)) continue;
    second += B[k] / cplx(0.0, k) * kTwoPi * (A[-k] - A[0]);
  }
  return first + second;
}

}  // namespace detail

/**
 * @brief Length from volume conservation: (L/2pi)^2 = R^2 / D with
 * D = 1 + (1/2pi) Im int_{-pi}^{pi} int_0^alpha e^{i(alpha-eta)} (e^{i(phi(alpha)-phi(eta))} - 1).
 *
 * With P = e^{i phi} - 1 the integrand splits into e^{i(alpha+phi)} * e^{-i eta} conj P(eta) plus
 * e^{i alpha} P(alpha) * e^{-i eta}; each product is integrated in closed form from its coefficients.
 * Throws VolumeDegeneracyError if D leaves (0, 2).
 */
inline double length_from_phi(const TrigSeries& phi, double R, int m = 0) {
  if (!(R > 0.0)) throw ConfigError("length_from_phi: R must be positive");
  if (!phi.is_real()) throw ConfigError("length_from_phi: phi must be real");
  if (m == 0) m = geometry_grid_size(phi.N());
  const int K = m / 2 - 1;
  const TrigSeries P = analyze(expi_minus_one(phi, m), K, false);

  detail::Spectrum A1(K + 1), B1(K + 1), A2(K + 1), B2(K + 1);
  A1.at(1) = 1.0;
  for (int k = -K; k <= K; ++k) {
    A1.at(k + 1) += P[k];  // e^{i alpha}(1 + P)
    A2.at(k + 1) = P[k];   // e^{i alpha} P
    B1.at(k - 1) = std::conj(P[-k]);  // e^{-i eta} conj(P): coefficient k-1 is conj(P_{-k})
  }
  B2.at(-1) = 1.0;
  const cplx I = detail::nested_integral(A1, B1) + detail::nested_integral(A2, B2);
  const double D = 1.0 + I.imag() / kTwoPi;
  if (!(D > 0.0 && D < 2.0) || !std::isfinite(D))
    throw VolumeDegeneracyError("length_from_phi: volume denominator " + std::to_string(D) +
                                " outside (0, 2); perturbation too large");
  return kTwoPi * R / std::sqrt(D);
}

inline double length_of(const InterfaceState& s) { return length_from_phi(s.phi, s.R); }

/// Curve samples z(alpha_j), alpha_j = 2 pi j/m.
struct CurveSamples {
  int m = 0;
  std::vector<cplx> z;
  cplx base_point = 0.0;
  double closure = 0.0;  ///< |(1/2pi) int e^{i(alpha+theta)}|, dropped before integrating

  double alpha(int j) const { return kTwoPi * j / m; }
};

/// |(1/2pi) int e^{i(alpha+theta)} dalpha| = |mode -1 of e^{i phi}|.
inline double closure_residual(const InterfaceState& s, int m = 0) {
  if (m == 0) m = geometry_grid_size(s.phi.N());
  const TrigSeries P = analyze(expi_minus_one(s.phi, m), 1, false);
  return std::abs(P[-1]);
}

/**
 * @brief Spectral antiderivative of z_alpha with z(0) = base_point.
 *
 * The zero mode of z_alpha (the failure to close) is reported in `closure` and not integrated.
 */
inline CurveSamples reconstruct_curve(const InterfaceState& s, cplx base_point = 0.0, int m = 0) {
  if (m == 0) m = geometry_grid_size(s.phi.N());
  detail::require_grid(s.phi.N(), m, "reconstruct_curve");
  const double L = length_of(s);
  const double scale = L / kTwoPi;
  auto p = synthesize_real(s.phi, m);
  std::vector<cplx> za(m);
  for (int j = 0; j < m; ++j) za[j] = scale * std::polar(1.0, kTwoPi * j / m + s.theta0 + p[j]);
  const int K = m / 2 - 1;
  const TrigSeries zh = analyze(za, K, false);
  TrigSeries Z(K, false);
  cplx at_zero = 0.0;
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    const cplx c = zh[k] / cplx(0.0, k);
    Z.set(k, c);
    at_zero += c;
  }
  CurveSamples out;
  out.m = m;
  out.base_point = base_point;
  out.closure = std::abs(zh[0]) / scale;
  out.z = synthesize(Z, m);
  for (auto& v : out.z) v += base_point - at_zero;
  return out;
}

/// V = (1/2) Im int conj(z) z_alpha, with z_alpha by spectral differentiation.
inline double volume(const CurveSamples& c, double tol_closure = 1e-6) {
  if (c.m < 4 || static_cast<int>(c.z.size()) != c.m) throw ConfigError("volume: malformed curve samples");
  if (!(c.closure <= tol_closure))
    throw GeometryError("volume: curve is open (closure residual " + std::to_string(c.closure) + ")");
  const TrigSeries zh = analyze(c.z, c.m / 2 - 1, false);
  const auto za = synthesize(derivative(zh), c.m);
  CompensatedSum acc;
  for (int j = 0; j < c.m; ++j) acc.add((std::conj(c.z[j]) * za[j]).imag());
  const double V = 0.5 * acc.value() * kTwoPi / c.m;
  if (!(V > 0.0)) throw GeometryError("volume: curve is not positively oriented");
  return V;
}

/// Signed curvature (2pi/L)(1 + phi_alpha).
inline TrigSeries curvature(const InterfaceState& s) {
  const double L = length_of(s);
  TrigSeries k = derivative(s.phi);
  k.set(0, 1.0);
  return (kTwoPi / L) * k;
}

/// theta independent of alpha up to tol, measured in the homogeneous s=1 Wiener norm.
inline bool is_circle(const InterfaceState& s, double tol) { return norm_Fs1(s.phi, 1.0) <= tol; }

/// L^2 - 4 pi V; nonnegative, zero only for circles.
inline double isoperimetric_deficit(double L, double V) { return L * L - 4.0 * kPi * V; }

/// (pi/2)(e^{2x} - 1), the quantity that controls the length bounds.
inline double length_bound_q(double x) { return 0.5 * kPi * std::expm1(2.0 * x); }

/// Two-sided bound on L in terms of x = ||phi||_{F^{0,1}}; requires q(x) < 1.
inline std::pair<double, double> length_bounds(double x, double R) {
  const double q = length_bound_q(x);
  if (!(q < 1.0)) throw ConfigError("length_bounds: norm outside the validity window");
  return {kTwoPi * R / std::sqrt(1.0 + q), kTwoPi * R / std::sqrt(1.0 - q)};
}

/// Bound on |2 pi R / L - 1|.
inline double length_ratio_bound(double x) {
  const double q = length_bound_q(x);
  if (!(q < 1.0)) throw ConfigError("length_ratio_bound: norm outside the validity window");
  return 1.0 - std::sqrt(1.0 - q);
}

inline void write_curve_csv(std::ostream& os, const CurveSamples& c) {
  os << "alpha,x,y\n";
  char buf[96];
  for (int j = 0; j < c.m; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", c.alpha(j), c.z[j].real(), c.z[j].imag());
    os << buf;
  }
}

}  // namespace bubble
