/**
 * @file oracles.hpp
 * @brief Direct-evaluation reference implementations shared by the unit tests.
 */
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "bubble/fourier.hpp"

namespace oracle {

using bubble::cplx;

/// sum_k c_k e^{ikx}, evaluated term by term.
inline cplx eval(const bubble::TrigSeries& f, double x) {
  cplx s = 0.0;
  for (int k = -f.N(); k <= f.N(); ++k) s += f[k] * std::polar(1.0, k * x);
  return s;
}

/// Real series with independent uniform coefficients in [-amp, amp] for 1 <= k <= N.
inline bubble::TrigSeries random_series(std::mt19937_64& rng, int N, double amp, bool zero_mean = true) {
  std::uniform_real_distribution<double> u(-amp, amp);
  bubble::TrigSeries f(N);
  if (!zero_mean) f.set(0, u(rng));
  for (int k = 1; k <= N; ++k) f.set(k, cplx(u(rng), u(rng)));
  return f;
}

/// 20-point Gauss-Legendre on [a, b], composed over `panels` subintervals.
template <class F>
auto gauss(F f, double a, double b, int panels = 16) {
  using R = decltype(f(a));
  R acc{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    acc += boost::math::quadrature::gauss<double, 20>::integrate(f, a + p * h, a + (p + 1) * h);
  return acc;
}

}  // namespace oracle
