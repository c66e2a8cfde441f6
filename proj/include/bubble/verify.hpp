/**
 * @file verify.hpp
 * @brief Seeded verification suites shared by the command line tool and the test programs.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "bubble/dynamics.hpp"
#include "bubble/fourier.hpp"
#include "bubble/geometry.hpp"
#include "bubble/spectral_analysis.hpp"
#include "bubble/velocity.hpp"

namespace bubble {

struct CheckRow {
  std::string name;
  double value = 0.0;  ///< measured quantity
  double bound = 0.0;  ///< threshold it is compared with
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRow> rows;
  nlohmann::json extra;  ///< suite-specific payload (e.g. multiplier reports)

  bool passed() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
  }
};

inline void to_json(nlohmann::json& j, const CheckRow& r) {
  j = nlohmann::json{{"name", r.name}, {"value", r.value}, {"bound", r.bound}, {"passed", r.passed}};
}

inline void to_json(nlohmann::json& j, const SuiteReport& s) {
  j = nlohmann::json{{"suite", s.suite}, {"seed", s.seed}, {"passed", s.passed()}, {"rows", s.rows}};
  if (!s.extra.is_null()) j["details"] = s.extra;
}

/// Random real mean-free trigonometric polynomial with modes 1..N and coefficients of modulus <= amp.
inline TrigSeries random_real_series(std::mt19937_64& rng, int N, double amp, bool skip_mode_one = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSeries f(N);
  for (int k = 1; k <= N; ++k) {
    if (skip_mode_one && k == 1) continue;
    f.set(k, amp * cplx(u(rng), u(rng)) / std::sqrt(2.0));
  }
  return f;
}

/// Random real series including a zero mode.
inline TrigSeries random_full_series(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSeries f = random_real_series(rng, N, 1.0);
  f.set(0, u(rng));
  return f;
}

/// Product estimates and embeddings of the weighted Wiener norms on `trials` random tuples.
inline SuiteReport norms_suite(std::uint64_t seed, int trials = 1000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band(1, 8), arity(2, 3);
  std::uniform_real_distribution<double> nu0(0.0, 0.5), tt(0.0, 5.0), s1(0.05, 3.0);
  const double slack = 1e-12;
  int v01 = 0, vs05 = 0, vs1 = 0, vs2 = 0, vemb = 0;
  double worst01 = 0.0, worsts = 0.0, worstemb = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = arity(rng);
    const NormWeight w{nu0(rng), tt(rng)};
    std::vector<TrigSeries> f;
    for (int i = 0; i < n; ++i) f.push_back(random_full_series(rng, band(rng)));
    TrigSeries prod = f[0];
    for (int i = 1; i < n; ++i) prod = product(prod, f[i], prod.N() + f[i].N());

    double rhs01 = 1.0;
    for (const auto& g : f) rhs01 *= norm_F01(g, w);
    const double lhs01 = norm_F01(prod, w);
    worst01 = std::max(worst01, lhs01 / rhs01);
    if (lhs01 > rhs01 * (1.0 + slack)) ++v01;

    for (double s : {0.5, 1.0, 2.0}) {
      const double b = s <= 1.0 ? 1.0 : std::pow(double(n), s - 1.0);
      double rhs = 0.0;
      for (int j = 0; j < n; ++j) {
        double term = norm_Fs1(f[j], s, w);
        for (int k = 0; k < n; ++k)
          if (k != j) term *= norm_F01(f[k], w);
        rhs += term;
      }
      rhs *= b;
      const double lhs = norm_Fs1(prod, s, w);
      if (rhs > 0.0) worsts = std::max(worsts, lhs / rhs);
      if (lhs > rhs * (1.0 + slack) + 1e-300) {
        if (s == 0.5) ++vs05;
        if (s == 1.0) ++vs1;
        if (s == 2.0) ++vs2;
      }
    }

    const double a = s1(rng);
    const double bexp = a + s1(rng);
    const double lo = norm_Fs1(f[0], a, w), hi = norm_Fs1(f[0], bexp, w);
    if (hi > 0.0) worstemb = std::max(worstemb, lo / hi);
    if (lo > hi * (1.0 + slack)) ++vemb;
  }
  SuiteReport r;
  r.suite = "norms";
  r.seed = seed;
  r.rows.push_back({"product_F01_violations", double(v01), 0.0, v01 == 0});
  r.rows.push_back({"product_Fs1_s0.5_violations", double(vs05), 0.0, vs05 == 0});
  r.rows.push_back({"product_Fs1_s1_violations", double(vs1), 0.0, vs1 == 0});
  r.rows.push_back({"product_Fs1_s2_violations", double(vs2), 0.0, vs2 == 0});
  r.rows.push_back({"embedding_violations", double(vemb), 0.0, vemb == 0});
  r.extra = {{"trials", trials}, {"worst_ratio_F01", worst01}, {"worst_ratio_Fs1", worsts}, {"worst_ratio_embedding", worstemb}};
  return r;
}

/// Mode bounds of the linear normal speed and the C_0 bound on random index triples.
inline SuiteReport kernels_suite(std::uint64_t seed, int kmax = 10, int instances = 100, double gamma = 1.0) {
  SuiteReport r;
  r.suite = "kernels";
  r.seed = seed;
  const auto [H3, H4] = H34(gamma);
  const auto bnd = ej_bounds(gamma);
  int per_kernel_violations = 0;
  for (int k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    const auto c = kernel_mode_integrals(k, gamma);
    for (int j = 0; j < 7; ++j) {
      const double lim = (j == 4 || j == 5) ? bnd[j] * std::abs(k) : bnd[j];
      if (std::abs(c[j]) > lim) ++per_kernel_violations;
    }
  }
  r.rows.push_back({"per_kernel_bound_violations", double(per_kernel_violations), 0.0, per_kernel_violations == 0});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band(2, kmax);
  int u1_violations = 0;
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const TrigSeries phi = random_real_series(rng, band(rng), 1e-2);
    const TrigSeries U1 = linear_velocity_U1(phi, gamma);
    for (int k = 1; k <= phi.N(); ++k) {
      const double a = std::abs(phi[k]);
      if (a == 0.0) continue;
      const double ratio = std::abs(U1[k]) / ((H3 + H4 * k) * a);
      worst = std::max(worst, ratio);
      if (ratio > 1.0) ++u1_violations;
    }
  }
  r.rows.push_back({"U1_mode_bound_violations", double(u1_violations), 0.0, u1_violations == 0});

  std::uniform_int_distribution<int> idx(-kmax, kmax);
  const double C0 = kernel_constants(0, gamma);
  int c0_violations = 0;
  double worst_c0 = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int k1 = idx(rng), k2 = idx(rng), k3 = idx(rng);
    const double v = std::abs(product_kernel_integral(k1, k2, {}, k3, gamma));
    worst_c0 = std::max(worst_c0, v / C0);
    if (v > C0) ++c0_violations;
  }
  r.rows.push_back({"C0_bound_violations", double(c0_violations), 0.0, c0_violations == 0});
  r.rows.push_back({"C2_greater_than_C1", kernel_constants(2, gamma) - kernel_constants(1, gamma), 0.0,
                    kernel_constants(2, gamma) > kernel_constants(1, gamma)});
  r.extra = {{"H3", H3}, {"H4", H4}, {"C0", C0}, {"worst_U1_ratio", worst}, {"worst_C0_ratio", worst_c0}};
  return r;
}

/// Closed-form multiplier against PV quadrature and finite-difference linearization.
inline SuiteReport multiplier_suite(int kmax = 6, double gamma = 1.0, double R = 1.0) {
  LinearizationCheck c;
  c.kmax = kmax;
  c.gamma = gamma;
  c.R = R;
  SuiteReport r;
  r.suite = "multiplier";
  const auto reports = verify_linearization(c);
  for (const auto& m : reports)
    r.rows.push_back({m.method + "_k" + std::to_string(m.k), m.abs_err,
                      m.k == 1 ? c.tol_zero : (m.method == "pv_quadrature" ? c.tol_quadrature : c.tol_fd_rel * std::abs(m.analytic)),
                      m.passed});
  for (int k = 2; k <= kmax; ++k) {
    const auto g = g_constants_quadrature(k);
    const auto a = g_constants_analytic(k);
    const double err = std::max({std::abs(g.g2 - a.g2), std::abs(g.g3 - a.g3), std::abs(g.g5 - a.g5),
                                 std::abs(g.g6 - a.g6), std::abs(g.g7 - a.g7), std::abs(g.g8 - a.g8)});
    r.rows.push_back({"g_constants_k" + std::to_string(k), err, 1e-8, err <= 1e-8});
    const double ej = std::abs(j1_from_g(k, g) - J1_analytic(k));
    r.rows.push_back({"J1_from_g_k" + std::to_string(k), ej, 1e-8, ej <= 1e-8});
  }
  r.extra = reports;
  return r;
}

/// Length, volume and closure consistency on fixed and seeded random shapes.
inline SuiteReport geometry_suite(std::uint64_t seed, int trials = 200) {
  SuiteReport r;
  r.suite = "geometry";
  r.seed = seed;
  InterfaceState circle;
  circle.phi = TrigSeries(8);
  const double Lc = length_of(circle);
  r.rows.push_back({"circle_length_error", std::abs(Lc - kTwoPi), 1e-12, std::abs(Lc - kTwoPi) <= 1e-12});
  const double Vc = volume(reconstruct_curve(circle));
  r.rows.push_back({"circle_volume_error", std::abs(Vc - kPi), 1e-12, std::abs(Vc - kPi) <= 1e-12});

  InterfaceState m2;
  m2.phi = TrigSeries(8);
  m2.phi.set(2, 0.01);
  const double V2 = volume(reconstruct_curve(m2));
  const double e2 = std::abs(V2 - kPi) / kPi;
  r.rows.push_back({"mode2_volume_relative_error", e2, 1e-10, e2 <= 1e-10});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band(2, 8);
  std::uniform_real_distribution<double> target(1e-4, 0.05);
  int bound_violations = 0, ratio_violations = 0, volume_violations = 0;
  double worst_volume = 0.0;
  for (int i = 0; i < trials; ++i) {
    TrigSeries phi = random_real_series(rng, band(rng), 1.0, true);
    phi *= target(rng) / norm_F01(phi);
    const double x = norm_F01(phi);
    const double L = length_from_phi(phi, 1.0);
    const auto [lo, hi] = length_bounds(x, 1.0);
    if (L < lo * (1 - 1e-14) || L > hi * (1 + 1e-14)) ++bound_violations;
    if (std::abs(kTwoPi / L - 1.0) > length_ratio_bound(x) + 1e-14) ++ratio_violations;
  }
  // Volume consistency is exact only for closed curves; use even-mode shapes, which close exactly.
  for (int i = 0; i < trials / 4; ++i) {
    TrigSeries phi(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 2; k <= 8; k += 2) phi.set(k, cplx(u(rng), u(rng)));
    phi *= target(rng) / norm_F01(phi);
    InterfaceState s;
    s.phi = phi;
    const double ev = std::abs(volume(reconstruct_curve(s)) - kPi) / kPi;
    worst_volume = std::max(worst_volume, ev);
    if (ev > 1e-10) ++volume_violations;
  }
  r.rows.push_back({"length_bound_violations", double(bound_violations), 0.0, bound_violations == 0});
  r.rows.push_back({"length_ratio_bound_violations", double(ratio_violations), 0.0, ratio_violations == 0});
  r.rows.push_back({"volume_consistency_violations", double(volume_violations), 0.0, volume_violations == 0});
  r.extra = {{"trials", trials}, {"worst_volume_relative_error", worst_volume}};
  return r;
}

}  // namespace bubble
