/**
 * @file acceptance.cpp
 * @brief Runs the ten acceptance criteria and prints one PASS/FAIL line per criterion.
 *
 * Exit status is 0 only if every criterion passes. INFO lines carry supporting measurements.
 */
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bubble/cli.hpp"
#include "bubble/dynamics.hpp"
#include "bubble/spectral_analysis.hpp"
#include "bubble/verify.hpp"

using namespace bubble;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(int n, const std::string& detail) {
  std::printf("INFO criterion %d: %s\n", n, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// The reference decay run of criteria 4-6: mode2_small, gamma = R = 1, N = 16, m = 64, dt = 1e-3, t_end = 20.
SimulationResult reference_run(double nu0, double& elapsed) {
  RunManifest m = preset_manifest("mode2_small");
  m.config.nu0 = nu0;
  const auto t0 = Clock::now();
  SimulationResult r = simulate(m.initial_state(), m.config);
  elapsed = seconds_since(t0);
  return r;
}

void criterion1() {
  const auto t0 = Clock::now();
  InterfaceState s;
  s.phi = TrigSeries(32);
  const VelocityField v = slp_velocity(s, QuadratureGrid(128));
  const double maxU = max_abs_on_grid(v.U, 128), maxT = max_abs_on_grid(v.T, 128);
  const double dL = std::abs(length_of(s) - kTwoPi);
  const double dt = seconds_since(t0);
  report(1, maxU <= 1e-10 && maxT <= 1e-10 && dL <= 1e-12 && dt < 1.0,
         fmt("steady circle max|U| = %.2e, max|T| = %.2e, |L - 2pi| = %.2e, %.3f s", maxU, maxT, dL, dt));
}

void criterion2() {
  const auto t0 = Clock::now();
  LinearizationCheck c;
  c.kmax = 6;
  const auto rows = verify_linearization(c);
  double q_err = 0.0, fd_rel = 0.0, zero = 0.0;
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.passed;
    if (r.k == 1) {
      zero = std::max(zero, std::abs(r.numeric));
    } else if (r.method == "pv_quadrature") {
      q_err = std::max(q_err, r.abs_err);
    } else {
      fd_rel = std::max(fd_rel, r.abs_err / std::abs(r.analytic));
    }
  }
  // k = -1: the finite-difference response of the conjugate mode
  TrigSeries d(6);
  d.set(1, 1.0);
  const double minus_one = std::abs(linearized_rhs_fd(d, c.eps, c.R, c.gamma, c.sim)[-1]);
  zero = std::max(zero, minus_one);
  ok = ok && minus_one <= 1e-6 && multiplier_analytic(-1, kTwoPi, 1.0) == 0.0;
  const double dt = seconds_since(t0);
  report(2, ok && dt < 30.0,
         fmt("k=2..6 max |analytic - PV quadrature| = %.2e, max FD relative error = %.2e, |k|=1 response %.2e, %.2f s",
             q_err, fd_rel, zero, dt));
}

void criterion3() {
  double g_err = 0.0, j_err = 0.0;
  for (int k = 2; k <= 6; ++k) {
    const GConstants g = g_constants_quadrature(k);
    const double h = kPi / 2;
    const cplx expect[6] = {-h * k, -h * k, cplx(0.0, -h), -h, -h, h};
    const cplx got[6] = {g.g2, g.g3, g.g5, g.g6, g.g7, g.g8};
    for (int i = 0; i < 6; ++i) g_err = std::max(g_err, std::abs(got[i] - expect[i]));
    j_err = std::max(j_err, std::abs(j1_from_g(k, g) - (-kPi / k)));
  }
  report(3, g_err <= 1e-8 && j_err <= 1e-8,
         fmt("max g-constant error %.2e, max assembled J1 error %.2e", g_err, j_err));
}

void criterion4_5(const SimulationResult& r, double elapsed) {
  const auto& recs = r.records;
  int growth = 0;
  std::vector<double> t, y;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    t.push_back(recs[i].t);
    y.push_back(recs[i].norm_F11);
    if (i > 0 && !(recs[i].norm_F11 < recs[i - 1].norm_F11)) ++growth;
  }
  const double rate = fit_decay_rate(t, y).value_or(0.0);
  const double final_norm = norm_Fs1(r.final_state.phi, 1.0);
  const bool circle = is_circle(r.final_state, 1e-6);
  const bool rate_ok = std::abs(rate - 0.5) <= 0.15 * 0.5;
  report(4, growth == 0 && rate_ok && circle && elapsed < 120.0,
         fmt("monotone: %s (%d growth rows), fitted rate %.6f (|err| %.2e, within 15%%: %s), final ||phi|| = %.4e, "
             "is_circle(1e-6): %s, %.1f s",
             growth == 0 ? "yes" : "no", growth, rate, std::abs(rate - 0.5), rate_ok ? "yes" : "no", final_norm,
             circle ? "true" : "false", elapsed));
  info(4, fmt("linear theory gives ||phi(20)|| = 0.04 e^{-10} = %.4e > 1e-6; is_circle(1e-6) first holds near t = %.2f",
              0.04 * std::exp(-10.0), 2.0 * std::log(0.04 / 1e-6)));

  double vol = 0.0, clo = 0.0;
  bool bounds = true, deficit = true;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    vol = std::max(vol, recs[i].volume_residual);
    clo = std::max(clo, recs[i].closure);
    const auto [lo, hi] = length_bounds(recs[i].norm_F01, 1.0);
    bounds = bounds && recs[i].L >= lo && recs[i].L <= hi;
    if (i > 0) {
      const double d0 = isoperimetric_deficit(recs[i - 1].L, recs[i - 1].volume);
      const double d1 = isoperimetric_deficit(recs[i].L, recs[i].volume);
      deficit = deficit && d1 <= d0 + 1e-13 * recs[i].L * recs[i].L;
    }
  }
  report(5, vol <= 1e-8 && bounds && clo <= 1e-6 && deficit,
         fmt("max volume_residual %.2e, L within length bounds: %s, max closure %.2e, deficit nonincreasing: %s", vol,
             bounds ? "yes" : "no", clo, deficit ? "yes" : "no"));
}

/// max over records of ||phi||_nu + (Lambda - nu0) int_0^t ||phi||_{nu,F21} / ||phi0|| - 1, trapezoid in t.
double weighted_excess(const std::vector<DiagnosticsRecord>& recs, double Lambda, double nu0) {
  const double n0 = recs.front().norm_F11;
  double integral = 0.0, worst = -1.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (i > 0) integral += 0.5 * (recs[i].t - recs[i - 1].t) * (recs[i].norm_F21_nu + recs[i - 1].norm_F21_nu);
    worst = std::max(worst, (recs[i].norm_F11_nu + (Lambda - nu0) * integral) / n0 - 1.0);
  }
  return worst;
}

void criterion6(const SimulationResult& r, const SimulationResult& unweighted) {
  const double nu0 = 0.1;
  const double excess = weighted_excess(r.records, 0.5, nu0);
  report(6, excess <= 1e-3,
         fmt("nu0 = 0.1, Lambda = 0.5: max (||phi||_nu + (Lambda - nu0) int ||phi||_{nu,F21}) / ||phi0|| - 1 = %.4e "
             "(allowed 1e-3)",
             excess));
  // Dissipation measured against the F^{2,1} norm on the nu0 = 0 run: -d/dt ||phi||_{F11} / ||phi||_{F21}.
  double lam = 1e300;
  const auto& u = unweighted.records;
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double dn = -(u[i].norm_F11 - u[i - 1].norm_F11) / (u[i].t - u[i - 1].t);
    lam = std::min(lam, dn / (0.5 * (u[i].norm_F21_nu + u[i - 1].norm_F21_nu)));
  }
  info(6, fmt("measured dissipation rate against the F^{2,1} norm: Lambda = %.5f (gamma/(4R) = 0.25); with Lambda = "
              "0.25 the same inequality gives excess %.4e",
              lam, weighted_excess(r.records, 0.25, nu0)));
}

void criterion7() {
  const SuiteReport rep = norms_suite(7, 1000);
  int violations = 0;
  std::string names;
  for (const auto& row : rep.rows) {
    if (!row.passed) ++violations;
    names += (names.empty() ? "" : ", ") + row.name + "=" + fmt("%g", row.value);
  }
  report(7, rep.passed(), fmt("1000 seeded trials, failing rows %d (%s)", violations, names.c_str()));
}

void criterion8() {
  RunManifest m = preset_manifest("mode2_small");
  std::vector<InterfaceState> end;
  for (double dt : {0.1, 0.05, 0.025}) {
    SimConfig c = m.config;
    c.dt = dt;
    c.t_end = 1.0;
    c.output_every = 1000000;
    end.push_back(simulate(m.initial_state(), c).final_state);
  }
  const double e1 = (end[0].phi - end[1].phi).max_abs(), e2 = (end[1].phi - end[2].phi).max_abs();
  const double ratio = e1 / e2;

  InterfaceState s;
  s.phi = TrigSeries(8);
  s.phi.set(2, 0.2);
  s.phi.set(3, 0.05);
  s.phi.set(4, cplx(0.0, 0.1));
  auto U = [&](int mm) { return slp_velocity(s, QuadratureGrid(mm), 1.0).U.resized(8); };
  const TrigSeries u32 = U(32), u64 = U(64), u128 = U(128);
  const double d1 = (u32 - u64).max_abs(), d2 = (u64 - u128).max_abs();
  const double factor = d1 / std::max(d2, 1e-300);
  report(8, ratio >= 11.0 && ratio <= 21.0 && factor >= 100.0,
         fmt("rk4 dt-halving error ratio %.3f (dt = 0.1/0.05/0.025), m-doubling change %.2e -> %.2e (factor %.2e) "
             "from m = 4N = 32",
             ratio, d1, d2, factor));
}

void criterion9() {
  std::mt19937_64 rng(9);
  InterfaceState s;
  s.phi = random_real_series(rng, 16, 1.0, true);
  s.phi *= 0.04 / norm_Fs1(s.phi, 1.0);
  double worst = 0.0;
  long steps = 0;
  for (Integrator it : {Integrator::rk4, Integrator::imex}) {
    SimConfig c;
    c.integrator = it;
    c.m = 128;  // resolves e^{i phi} for a full 16-mode spectrum
    c.dt = 1e-2;
    Evolution ev(c);
    InterfaceState x = s;
    for (int n = 0; n < 500; ++n, ++steps) {
      x = ev.step(x);
      worst = std::max({worst, std::abs(x.phi[1]), std::abs(x.phi[-1])});
    }
  }
  report(9, worst <= 1e-16, fmt("max |phi_hat(+-1)| over %ld constrained steps (rk4 and imex): %.2e", steps, worst));
}

void criterion10() {
  const SuiteReport rep = kernels_suite(10, 10, 100);
  int violations = 0;
  for (const auto& row : rep.rows)
    if (!row.passed) ++violations;
  report(10, rep.passed(), fmt("%zu rows (U1 mode bound and product kernel C0 bound on 100 seeded instances), %d violations",
                               rep.rows.size(), violations));
}

void guarded(int n, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  SimulationResult plain;
  guarded(4, [&] {
    double elapsed = 0.0;
    plain = reference_run(0.0, elapsed);
    criterion4_5(plain, elapsed);
  });
  guarded(6, [&] {
    double elapsed = 0.0;
    if (plain.records.empty()) throw NumericalError("reference run unavailable");
    criterion6(reference_run(0.1, elapsed), plain);
  });
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
