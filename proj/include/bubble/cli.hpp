/**
 * @file cli.hpp
 * @brief Run manifests, presets, series/state I/O and the simulate/verify commands.
 *
 * Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 numerical failure.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bubble/dynamics.hpp"
#include "bubble/error.hpp"
#include "bubble/fourier.hpp"
#include "bubble/geometry.hpp"
#include "bubble/verify.hpp"

namespace bubble {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct RunManifest {
  SimConfig config;
  double gamma = 1.0;
  double R = 1.0;
  double theta0 = 0.0;
  TrigSeries initial;
  std::string preset;  ///< empty for explicit series
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  InterfaceState initial_state() const {
    InterfaceState s;
    s.phi = initial;
    s.theta0 = theta0;
    s.R = R;
    s.gamma = gamma;
    return s;
  }
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"circle", "mode2_small", "mode3_small", "multi_mode"};
  return names;
}

/// Built-in initial perturbations; all have phi_hat(0) = phi_hat(+-1) = 0.
inline TrigSeries preset_series(const std::string& name, int N) {
  TrigSeries f(N);
  auto put = [&](int k, double v) {
    if (k > N) throw ConfigError("initial/preset: \"" + name + "\" needs N >= " + std::to_string(k));
    f.set(k, v);
  };
  if (name == "circle") return f;
  if (name == "mode2_small") {
    put(2, 0.01);
  } else if (name == "mode3_small") {
    put(3, 0.008);
  } else if (name == "multi_mode") {
    put(2, 0.008);
    put(3, 0.004);
  } else {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("initial/preset: unknown preset \"" + name + "\" (known: " + list + ")");
  }
  return f;
}

/// Manifest for a preset with the reference settings gamma = R = 1, N = 16, m = 64, dt = 1e-3, t_end = 20.
inline RunManifest preset_manifest(const std::string& name) {
  RunManifest m;
  m.preset = name;
  m.initial = preset_series(name, m.config.N);
  if (name == "multi_mode") {
    // ||phi0|| = 0.056, and modes 2 and 3 leave an O(|phi|^2) closure defect of about 3e-5.
    m.config.smallness = 0.06;
    m.config.tol_closure = 1e-4;
  }
  return m;
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + key + ": missing required field '" + key + "'");
  return obj.at(key);
}

inline double number_field(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

inline long long integer_field(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return v.get<long long>();
}

inline void reject_unknown(const nlohmann::json& obj, const std::vector<std::string>& known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ConfigError(path + it.key() + ": unknown field");
}

inline SimConfig parse_config(const nlohmann::json& c) {
  if (!c.is_object()) throw ConfigError("config: expected an object");
  reject_unknown(c, {"N", "m", "dt", "t_end", "integrator", "nu0", "output_every", "tol_closure", "tol_resolution",
                     "constrained", "smallness"},
                 "config/");
  SimConfig s;
  if (c.contains("N")) s.N = static_cast<int>(integer_field(c["N"], "config/N"));
  s.m = c.contains("m") ? static_cast<int>(integer_field(c["m"], "config/m")) : 4 * s.N;
  if (c.contains("dt")) s.dt = number_field(c["dt"], "config/dt");
  if (c.contains("t_end")) s.t_end = number_field(c["t_end"], "config/t_end");
  if (c.contains("integrator")) {
    if (!c["integrator"].is_string()) throw ConfigError("config/integrator: expected a string");
    s.integrator = integrator_from_string(c["integrator"].get<std::string>());
  }
  if (c.contains("nu0")) s.nu0 = number_field(c["nu0"], "config/nu0");
  if (c.contains("output_every")) s.output_every = static_cast<int>(integer_field(c["output_every"], "config/output_every"));
  if (c.contains("tol_closure")) s.tol_closure = number_field(c["tol_closure"], "config/tol_closure");
  if (c.contains("tol_resolution")) s.tol_resolution = number_field(c["tol_resolution"], "config/tol_resolution");
  if (c.contains("constrained")) {
    if (!c["constrained"].is_boolean()) throw ConfigError("config/constrained: expected true or false");
    s.constrained = c["constrained"].get<bool>();
  }
  if (c.contains("smallness")) s.smallness = number_field(c["smallness"], "config/smallness");
  s.validate();
  return s;
}

}  // namespace detail

/// Builds and validates a manifest from parsed JSON; errors name the offending field.
inline RunManifest parse_manifest(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("manifest: expected a JSON object");
  detail::reject_unknown(j, {"config", "gamma", "R", "theta0", "initial", "seed", "output_dir"}, "");
  RunManifest m;
  m.config = j.contains("config") ? detail::parse_config(j["config"]) : SimConfig{};
  m.gamma = detail::number_field(detail::require_field(j, "gamma", ""), "gamma");
  m.R = detail::number_field(detail::require_field(j, "R", ""), "R");
  if (!(m.gamma > 0.0)) throw ConfigError("gamma: must be positive");
  if (!(m.R > 0.0)) throw ConfigError("R: must be positive");
  if (j.contains("theta0")) m.theta0 = detail::number_field(j["theta0"], "theta0");
  if (j.contains("seed")) {
    const long long s = detail::integer_field(j["seed"], "seed");
    if (s < 0) throw ConfigError("seed: must be nonnegative");
    m.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir: expected a string");
    m.output_dir = j["output_dir"].get<std::string>();
  }
  const auto& init = detail::require_field(j, "initial", "");
  if (!init.is_object()) throw ConfigError("initial: expected an object");
  detail::reject_unknown(init, {"preset", "series"}, "initial/");
  if (init.contains("preset") == init.contains("series"))
    throw ConfigError("initial: give exactly one of 'preset' or 'series'");
  if (init.contains("preset")) {
    if (!init["preset"].is_string()) throw ConfigError("initial/preset: expected a string");
    m.preset = init["preset"].get<std::string>();
    m.initial = preset_series(m.preset, m.config.N);
  } else {
    try {
      m.initial = init["series"].get<TrigSeries>();
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("initial/") + e.what());
    }
    if (!m.initial.is_real()) throw ConfigError("initial/series: coefficients must be Hermitian (real phi)");
    if (m.initial.N() > m.config.N) {
      for (int k = m.config.N + 1; k <= m.initial.N(); ++k)
        if (m.initial[k] != cplx(0.0)) throw ConfigError("initial/series: nonzero modes above config N");
    }
    m.initial = m.initial.resized(m.config.N);
  }
  if (m.initial[0] != cplx(0.0)) throw ConfigError("initial: phi_hat(0) must be 0");
  if (m.config.constrained && m.initial[1] != cplx(0.0))
    throw ConfigError("initial: constrained runs need phi_hat(+-1) = 0");
  return m;
}

inline RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("manifest: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("manifest: malformed JSON in '" + path + "': " + e.what());
  }
  return parse_manifest(j);
}

inline void write_series(const std::string& path, const TrigSeries& f) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_series: cannot open '" + path + "'");
  out << nlohmann::json(f).dump(2) << "\n";
}

inline TrigSeries read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_series: cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in).get<TrigSeries>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("read_series: " + std::string(e.what()));
  }
}

inline nlohmann::json state_to_json(const InterfaceState& s) {
  nlohmann::json j{{"t", s.t}, {"theta0", s.theta0}, {"R", s.R}, {"gamma", s.gamma}, {"phi", s.phi}};
  try {
    j["L"] = length_of(s);
  } catch (const NumericalError&) {
    j["L"] = nullptr;
  }
  return j;
}

/// Least-squares slope of -log(y) against t over the positive entries; nullopt if fewer than two.
inline std::optional<double> fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y) {
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) continue;
    const double ly = std::log(y[i]);
    n += 1;
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  if (n < 2) return std::nullopt;
  const double den = n * stt - st * st;
  if (den == 0.0) return std::nullopt;
  return -(n * sty - st * sy) / den;
}

/// Increases of the norm below this are roundoff (a resting circle accumulates ~1e-16 per step).
inline constexpr double kGrowthFloor = 1e-13;

/// Trajectory invariants evaluated on the recorded diagnostics.
inline nlohmann::json trajectory_summary(const std::vector<DiagnosticsRecord>& recs, const RunManifest& m,
                                         const InterfaceState& final_state) {
  std::vector<double> t, y;
  int growth_rows = 0;
  double max_volume = 0.0, max_closure = 0.0, max_U = 0.0, max_T = 0.0, max_L_err = 0.0;
  bool l_bounds_ok = true, deficit_ok = true;
  const double closure_cap = recs.empty() ? m.config.tol_closure : std::max(recs.front().closure, m.config.tol_closure);
  const double R = m.R;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    t.push_back(r.t);
    y.push_back(r.norm_F11);
    if (i > 0 && r.norm_F11 > recs[i - 1].norm_F11 * (1.0 + 1e-12) + kGrowthFloor) ++growth_rows;
    max_volume = std::max(max_volume, r.volume_residual);
    max_closure = std::max(max_closure, r.closure);
    max_U = std::max(max_U, r.maxU);
    max_T = std::max(max_T, r.maxT);
    max_L_err = std::max(max_L_err, std::abs(r.L - kTwoPi * R));
    if (i > 0) {
      const double d0 = isoperimetric_deficit(recs[i - 1].L, recs[i - 1].volume);
      const double d1 = isoperimetric_deficit(r.L, r.volume);
      if (d1 > d0 + 1e-13 * r.L * r.L) deficit_ok = false;
    }
    if (length_bound_q(r.norm_F01) < 1.0) {
      const auto [lo, hi] = length_bounds(r.norm_F01, R);
      if (r.L < lo * (1 - 1e-14) || r.L > hi * (1 + 1e-14)) l_bounds_ok = false;
    }
  }
  const auto rate = fit_decay_rate(t, y);
  auto flag = [](double value, double bound, bool passed) {
    return nlohmann::json{{"value", value}, {"bound", bound}, {"passed", passed}};
  };
  nlohmann::json inv;
  inv["monotone_decay"] = flag(growth_rows, 0, growth_rows == 0);
  inv["volume_residual"] = flag(max_volume, 1e-8, max_volume <= 1e-8);
  inv["closure"] = flag(max_closure, closure_cap, max_closure <= closure_cap);
  inv["length_bounds"] = {{"passed", l_bounds_ok}};
  inv["isoperimetric_deficit_nonincreasing"] = {{"passed", deficit_ok}};
  const bool circle = is_circle(final_state, 1e-6);
  inv["final_is_circle"] = {{"value", norm_Fs1(final_state.phi, 1.0)}, {"bound", 1e-6}, {"passed", circle}};
  bool all = growth_rows == 0 && max_volume <= 1e-8 && max_closure <= closure_cap && l_bounds_ok && deficit_ok && circle;
  nlohmann::json s{{"records", recs.size()},
                   {"growth_rows", growth_rows},
                   {"max_volume_residual", max_volume},
                   {"max_closure", max_closure},
                   {"max_U", max_U},
                   {"max_T", max_T},
                   {"max_length_error", max_L_err},
                   {"final_norm_F11", norm_Fs1(final_state.phi, 1.0)},
                   {"invariants", inv},
                   {"all_invariants_passed", all}};
  s["fitted_rate"] = rate ? nlohmann::json(*rate) : nlohmann::json(nullptr);
  return s;
}

/**
 * @brief Runs a manifest and writes diagnostics.csv, final_state.json and summary.json under `out_dir`.
 *
 * The manifest is validated before anything is written. On a numerical failure the rows produced so
 * far, the last good state and a failure summary are written and 3 is returned.
 */
inline int cmd_simulate(const RunManifest& m, const std::string& out_dir, std::ostream& log = std::cerr) {
  InterfaceState init;
  try {
    m.config.validate();
    init = m.initial_state();
    init.validate();
    if (norm_Fs1(init.phi, 1.0) > m.config.smallness)
      throw ConfigError("initial: perturbation exceeds the smallness threshold");
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  namespace fs = std::filesystem;
  try {
    fs::create_directories(out_dir);
  } catch (const fs::filesystem_error& e) {
    log << "config error: cannot create output directory: " << e.what() << "\n";
    return kExitConfig;
  }
  std::ofstream csv(fs::path(out_dir) / "diagnostics.csv");
  csv << diagnostics_csv_header() << "\n";
  auto write_json = [&](const std::string& name, const nlohmann::json& j) {
    std::ofstream f(fs::path(out_dir) / name);
    f << j.dump(2) << "\n";
  };
  std::vector<DiagnosticsRecord> rows;
  auto sink = [&](const DiagnosticsRecord& r) {
    rows.push_back(r);
    write_csv_row(csv, r);
  };
  try {
    const SimulationResult res = simulate(init, m.config, sink);
    csv.flush();
    write_json("final_state.json", state_to_json(res.final_state));
    nlohmann::json summary = trajectory_summary(res.records, m, res.final_state);
    summary["status"] = "ok";
    summary["steps"] = res.steps;
    summary["preset"] = m.preset;
    summary["expected_rate_mode2"] = m.gamma * 2.0 / (4.0 * m.R);
    write_json("summary.json", summary);
    return kExitOk;
  } catch (const StepFailure& e) {
    csv.flush();
    write_json("final_state.json", state_to_json(e.last_good()));
    nlohmann::json summary = trajectory_summary(rows, m, e.last_good());
    summary["status"] = "numerical_failure";
    summary["error"] = e.what();
    write_json("summary.json", summary);
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

inline SuiteReport run_suite(const std::string& what, std::uint64_t seed, int kmax) {
  if (kmax < 2) throw ConfigError("verify: kmax must be >= 2");
  if (what == "multiplier") return multiplier_suite(kmax);
  if (what == "kernels") return kernels_suite(seed, kmax);
  if (what == "norms") return norms_suite(seed);
  if (what == "geometry") return geometry_suite(seed);
  throw ConfigError("verify: unknown suite \"" + what + "\" (multiplier, kernels, norms, geometry)");
}

/// Runs a suite and writes <out_dir>/verify_<what>.json; 0 iff every row passes.
inline int cmd_verify(const std::string& what, std::uint64_t seed, int kmax, const std::string& out_dir,
                      std::ostream& log = std::cerr) {
  SuiteReport rep;
  try {
    rep = run_suite(what, seed, kmax);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / ("verify_" + what + ".json"));
  f << nlohmann::json(rep).dump(2) << "\n";
  for (const auto& r : rep.rows)
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << r.value << " bound=" << r.bound << "\n";
  return rep.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace bubble
