/**
 * @file dynamics.hpp
 * @brief Tangent-angle evolution, Galerkin cutoff, time stepping and trajectory diagnostics.
 *
 * theta_t = (2pi/L)(U_alpha + T(1 + phi_alpha)), projected with J_N^1 (constrained runs) or J_N.
 * The zero mode of the right-hand side drives theta0 and does not feed back into phi.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "bubble/error.hpp"
#include "bubble/fourier.hpp"
#include "bubble/geometry.hpp"
#include "bubble/quadrature.hpp"
#include "bubble/velocity.hpp"

namespace bubble {

enum class Integrator { rk4, imex };

inline std::string to_string(Integrator i) { return i == Integrator::rk4 ? "rk4" : "imex"; }

inline Integrator integrator_from_string(const std::string& s) {
  if (s == "rk4") return Integrator::rk4;
  if (s == "imex") return Integrator::imex;
  throw ConfigError("integrator: expected \"rk4\" or \"imex\", got \"" + s + "\"");
}

struct SimConfig {
  int N = 16;
  int m = 64;
  double dt = 1e-3;
  double t_end = 20.0;
  Integrator integrator = Integrator::rk4;
  double nu0 = 0.0;
  int output_every = 100;
  double tol_closure = 1e-6;
  double tol_resolution = 1e-8;
  bool constrained = true;   ///< zero the +-1 modes (J_N^1) rather than only truncate (J_N)
  double smallness = 0.05;   ///< bound on ||phi0|| in the homogeneous s=1 norm

  void validate() const {
    if (N < 2) throw ConfigError("config/N: must be >= 2");
    if (m < 4 * N) throw ConfigError("config/m: must be >= 4N");
    if (m % 2 != 0) throw ConfigError("config/m: must be even");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("config/dt: must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("config/t_end: must be nonnegative");
    if (!(nu0 >= 0.0)) throw ConfigError("config/nu0: must be nonnegative");
    if (output_every < 1) throw ConfigError("config/output_every: must be >= 1");
    if (!(tol_closure > 0.0)) throw ConfigError("config/tol_closure: must be positive");
    if (!(tol_resolution > 0.0)) throw ConfigError("config/tol_resolution: must be positive");
    if (!(smallness > 0.0)) throw ConfigError("config/smallness: must be positive");
  }
};

struct DiagnosticsRecord {
  double t = 0.0;
  double L = 0.0;
  double norm_F11_nu = 0.0;  ///< nu(t)-weighted homogeneous s=1 norm
  double norm_F11 = 0.0;
  double norm_F21_nu = 0.0;
  double maxU = 0.0;
  double maxT = 0.0;
  double closure = 0.0;
  double volume_residual = 0.0;  ///< |V - pi R^2| / (pi R^2)
  double theta0 = 0.0;
  // not written to the CSV
  double norm_F01 = 0.0;
  double volume = 0.0;
};

inline const char* diagnostics_csv_header() {
  return "t,L,norm_F11_nu,norm_F11,norm_F21_nu,maxU,maxT,closure,volume_residual,theta0";
}

inline void write_csv_row(std::ostream& os, const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.L,
                r.norm_F11_nu, r.norm_F11, r.norm_F21_nu, r.maxU, r.maxT, r.closure, r.volume_residual, r.theta0);
  os << buf;
}

/// Step produced a non-finite state or the right-hand side failed; carries the last good state.
class StepFailure : public NumericalError {
 public:
  StepFailure(const std::string& what, InterfaceState last_good)
      : NumericalError(what), last_good_(std::move(last_good)) {}
  const InterfaceState& last_good() const { return last_good_; }

 private:
  InterfaceState last_good_;
};

/// Right-hand side and stepper bound to one configuration and quadrature grid.
class Evolution {
 public:
  explicit Evolution(SimConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    grid_ = QuadratureGrid(cfg_.m);
  }

  const SimConfig& config() const { return cfg_; }
  const QuadratureGrid& grid() const { return grid_; }

  /// theta_t with band N; the zero mode is the theta0 rate.
  TrigSeries rhs(const InterfaceState& s) const {
    const VelocityField v = velocity(s);
    return assemble(s, v);
  }

  VelocityField velocity(const InterfaceState& s) const {
    s.validate();
    if (s.phi.N() > cfg_.N) throw ConfigError("rhs: state band exceeds config N");
    const InterfaceState sN = with_band(s);
    return slp_velocity(sN, grid_, cfg_.tol_resolution);
  }

  TrigSeries assemble(const InterfaceState& s, const VelocityField& v) const {
    const int N = cfg_.N;
    TrigSeries g = derivative(s.phi);
    g.set(0, 1.0);
    TrigSeries out = derivative(v.U).resized(N);
    out += product(v.T, g, N);
    out *= kTwoPi / v.L;
    return cfg_.constrained ? cutoff_JN1(out, N) : cutoff_JN(out, N);
  }

  InterfaceState step(const InterfaceState& s) const {
    const InterfaceState s0 = with_band(s);
    InterfaceState out;
    try {
      out = cfg_.integrator == Integrator::rk4 ? step_rk4(s0) : step_imex(s0);
    } catch (const NumericalError& e) {
      throw StepFailure(std::string("step at t = ") + std::to_string(s.t) + ": " + e.what(), s);
    }
    for (const auto& c : out.phi.coefficients())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw StepFailure("step at t = " + std::to_string(s.t) + ": non-finite state", s);
    if (!std::isfinite(out.theta0)) throw StepFailure("step: non-finite theta0", s);
    return out;
  }

  DiagnosticsRecord record(const InterfaceState& s) const {
    DiagnosticsRecord r;
    const VelocityField v = velocity(s);
    const NormWeight w{cfg_.nu0, s.t};
    r.t = s.t;
    r.L = v.L;
    r.norm_F11_nu = norm_Fs1(s.phi, 1.0, w);
    r.norm_F11 = norm_Fs1(s.phi, 1.0);
    r.norm_F21_nu = norm_Fs1(s.phi, 2.0, w);
    r.maxU = max_abs_on_grid(v.U, cfg_.m);
    r.maxT = max_abs_on_grid(v.T, cfg_.m);
    r.closure = closure_residual(s);
    const double V0 = kPi * s.R * s.R;
    r.volume = volume(reconstruct_curve(s), cfg_.tol_closure);
    r.volume_residual = std::abs(r.volume - V0) / V0;
    r.norm_F01 = norm_F01(s.phi);
    r.theta0 = s.theta0;
    return r;
  }

  /// Linear decay rate gamma|k|/(4R) used by the integrating factor (modes |k| >= 2).
  double linear_rate(const InterfaceState& s, int k) const {
    const int a = std::abs(k);
    return a >= 2 ? -s.gamma * a / (4.0 * s.R) : 0.0;
  }

 private:
  InterfaceState with_band(const InterfaceState& s) const {
    if (s.phi.N() == cfg_.N) return s;
    InterfaceState out = s;
    out.phi = s.phi.resized(cfg_.N);
    return out;
  }

  /// phi part (zero mode dropped) and theta0 rate.
  void split(const TrigSeries& r, TrigSeries& dphi, double& dtheta0) const {
    dtheta0 = r[0].real();
    dphi = r;
    dphi.set(0, 0.0);
  }

  InterfaceState advance(const InterfaceState& s, const TrigSeries& dphi, double dth, double h) const {
    InterfaceState out = s;
    out.phi = s.phi + h * dphi;
    out.theta0 = s.theta0 + h * dth;
    return out;
  }

  InterfaceState step_rk4(const InterfaceState& s) const {
    const double h = cfg_.dt;
    TrigSeries k1, k2, k3, k4;
    double a1, a2, a3, a4;
    split(rhs(s), k1, a1);
    split(rhs(advance(s, k1, a1, 0.5 * h)), k2, a2);
    split(rhs(advance(s, k2, a2, 0.5 * h)), k3, a3);
    split(rhs(advance(s, k3, a3, h)), k4, a4);
    InterfaceState out = s;
    out.phi = s.phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.theta0 = s.theta0 + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    out.t = s.t + h;
    return out;
  }

  /// Multiplies mode k by e^{lambda_k tau}.
  TrigSeries propagate(const InterfaceState& s, const TrigSeries& f, double tau) const {
    TrigSeries out = f;
    for (int k = 1; k <= f.N(); ++k) out.set(k, f[k] * std::exp(linear_rate(s, k) * tau));
    return out;
  }

  /// Nonlinear remainder F(u) - Lambda u.
  void remainder(const InterfaceState& s, TrigSeries& n, double& dth) const {
    split(rhs(s), n, dth);
    for (int k = 1; k <= n.N(); ++k) n.set(k, n[k] - linear_rate(s, k) * s.phi[k]);
  }

  /// Integrating-factor (Lawson) RK4 with the frozen linear multiplier -gamma|k|/(4R).
  InterfaceState step_imex(const InterfaceState& s) const {
    const double h = cfg_.dt;
    TrigSeries n1, n2, n3, n4;
    double a1, a2, a3, a4;
    remainder(s, n1, a1);
    InterfaceState sa = s;
    sa.phi = propagate(s, s.phi + (0.5 * h) * n1, 0.5 * h);
    sa.theta0 = s.theta0 + 0.5 * h * a1;
    remainder(sa, n2, a2);
    InterfaceState sb = s;
    sb.phi = propagate(s, s.phi, 0.5 * h) + (0.5 * h) * n2;
    sb.theta0 = s.theta0 + 0.5 * h * a2;
    remainder(sb, n3, a3);
    InterfaceState sc = s;
    sc.phi = propagate(s, s.phi, h) + h * propagate(s, n3, 0.5 * h);
    sc.theta0 = s.theta0 + h * a3;
    remainder(sc, n4, a4);
    InterfaceState out = s;
    out.phi = propagate(s, s.phi, h) +
              (h / 6.0) * (propagate(s, n1, h) + 2.0 * propagate(s, n2 + n3, 0.5 * h) + n4);
    out.theta0 = s.theta0 + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    out.t = s.t + h;
    return out;
  }

  SimConfig cfg_;
  QuadratureGrid grid_;
};

inline TrigSeries rhs(const InterfaceState& s, const SimConfig& cfg) { return Evolution(cfg).rhs(s); }

inline InterfaceState step(const InterfaceState& s, const SimConfig& cfg) { return Evolution(cfg).step(s); }

/// Zero mode of (2pi/L) T (1 + phi_alpha), the theta0 rate.
inline double zero_mode_rate(const InterfaceState& s, const SimConfig& cfg) { return rhs(s, cfg)[0].real(); }

/// (rhs(eps d) - rhs(0))/eps about the circle of radius R, computed without the +-1 cutoff.
inline TrigSeries linearized_rhs_fd(const TrigSeries& direction, double eps, double R, double gamma, SimConfig cfg) {
  if (!(eps >= 1e-8 && eps <= 1e-4)) throw ConfigError("linearized_rhs_fd: eps must lie in [1e-8, 1e-4]");
  cfg.constrained = false;
  cfg.N = std::max(cfg.N, direction.N());
  cfg.m = std::max(cfg.m, 4 * cfg.N);
  Evolution ev(cfg);
  InterfaceState base;
  base.phi = TrigSeries(cfg.N);
  base.R = R;
  base.gamma = gamma;
  InterfaceState pert = base;
  pert.phi = (eps * direction).resized(cfg.N);
  return (1.0 / eps) * (ev.rhs(pert) - ev.rhs(base));
}

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  InterfaceState final_state;
  long steps = 0;
};

/**
 * @brief Integrates from init to t_end, recording every output_every steps and at the end.
 *
 * Each record is passed to `sink` as soon as it is produced. Errors propagate as StepFailure
 * (numerical) or ConfigError (bad input).
 */
inline SimulationResult simulate(const InterfaceState& init, const SimConfig& cfg,
                                 const std::function<void(const DiagnosticsRecord&)>& sink = {}) {
  cfg.validate();
  init.validate();
  if (init.phi.N() > cfg.N)
    for (int k = cfg.N + 1; k <= init.phi.N(); ++k)
      if (init.phi[k] != cplx(0.0)) throw ConfigError("initial: modes beyond config N are nonzero");
  if (cfg.constrained && (init.phi[1] != cplx(0.0)))
    throw ConfigError("initial: constrained runs need phi_hat(+-1) = 0");
  const double n11 = norm_Fs1(init.phi, 1.0);
  if (n11 > cfg.smallness)
    throw ConfigError("initial: ||phi0|| = " + std::to_string(n11) + " exceeds the smallness threshold " +
                      std::to_string(cfg.smallness));

  Evolution ev(cfg);
  InterfaceState s = init;
  s.phi = init.phi.resized(cfg.N);
  const double t0 = s.t;
  const long nsteps = std::lround(cfg.t_end / cfg.dt);
  SimulationResult res;
  auto emit = [&](const InterfaceState& st) {
    DiagnosticsRecord r;
    try {
      r = ev.record(st);
    } catch (const NumericalError& e) {
      throw StepFailure(std::string("diagnostics: ") + e.what(), st);
    }
    res.records.push_back(r);
    if (sink) sink(r);
  };
  emit(s);
  for (long n = 1; n <= nsteps; ++n) {
    s = ev.step(s);
    s.t = t0 + n * cfg.dt;
    res.steps = n;
    if (n % cfg.output_every == 0 || n == nsteps) emit(s);
  }
  res.final_state = s;
  return res;
}

}  // namespace bubble
