/**
 * @file quadrature.hpp
 * @brief Periodic quadrature grid with logarithmic product weights, and adaptive
 * Gauss-Kronrod helpers for the principal-value integrals used by the reference checks.
 */
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "bubble/error.hpp"
#include "bubble/fourier.hpp"

namespace bubble {

/**
 * @brief Uniform grid on [-pi, pi) with trapezoid weights and the circulant product weights
 * for the kernel -log|2 sin(x/2)|.
 *
 * weights_log[d] is the weight of a source node whose offset from the target is x = 2 pi d/m.
 * They integrate -log|2 sin(x/2)| e^{ikx} exactly for |k| <= m/2 - 1 (value pi/|k|, 0 at k = 0).
 */
struct QuadratureGrid {
  int m = 0;
  std::vector<double> beta_nodes;
  std::vector<double> weights_smooth;
  std::vector<double> weights_log;

  QuadratureGrid() = default;

  explicit QuadratureGrid(int m_) : m(m_) {
    if (m < 4 || m % 2 != 0) throw ConfigError("QuadratureGrid: m must be even and >= 4, got " + std::to_string(m));
    const double h = kTwoPi / m;
    beta_nodes.resize(m);
    for (int j = 0; j < m; ++j) beta_nodes[j] = -kPi + j * h;
    weights_smooth.assign(m, h);
    // w(x) = (2pi/m) sum_{k=1}^{m/2-1} cos(kx)/k + (2pi/m^2) cos(mx/2)
    std::vector<cplx> spec(m, cplx(0.0));
    for (int k = 1; k < m / 2; ++k) {
      spec[k] = kPi / (double(m) * k);
      spec[m - k] = spec[k];
    }
    spec[m / 2] = kTwoPi / (double(m) * m);
    detail::fft_backward(spec);
    weights_log.resize(m);
    for (int d = 0; d < m; ++d) weights_log[d] = spec[d].real();
  }
};

namespace quad {

/// Adaptive 31-point Gauss-Kronrod on [a, b] for complex-valued integrands.
inline cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-12,
                      unsigned max_depth = 12) {
  double err = 0.0;
  const cplx v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OracleError("quadrature: non-finite integral");
  const double scale = std::max(1.0, std::abs(v));
  if (err > 1e3 * tol * scale) throw OracleError("quadrature: no convergence (error estimate " + std::to_string(err) + ")");
  return v;
}

/**
 * @brief Principal value over [-pi, pi] of an integrand with an isolated odd singularity at 0.
 *
 * Folding F(b) + F(-b) onto (0, pi] cancels the odd part, which is the symmetric excision
 * limit eps -> 0 taken exactly. Interior breakpoints keep oscillatory integrands well sampled.
 */
inline cplx pv_integrate(const std::function<cplx(double)>& f, double tol = 1e-12, int pieces = 8) {
  auto folded = [&f](double b) { return f(b) + f(-b); };
  cplx total = 0.0;
  for (int p = 0; p < pieces; ++p) total += integrate(folded, kPi * p / pieces, kPi * (p + 1) / pieces, tol);
  return total;
}

}  // namespace quad

}  // namespace bubble
