/**
 * @file bubble.cpp
 * @brief Command-line front end: `bubble simulate` and `bubble verify`.
 */
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bubble/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hele-Shaw bubble interface evolution and reference checks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, preset;
  auto* sim = app.add_subcommand("simulate", "Evolve an interface from a run manifest");
  sim->add_option("--config", config_path, "Run manifest (JSON)");
  sim->add_option("--out", out_dir, "Output directory (overrides the manifest)");
  sim->add_option("--preset", preset, "Built-in initial shape with the reference settings");

  std::string suite, vout = "out";
  std::uint64_t seed = 0;
  int kmax = 6;
  auto* ver = app.add_subcommand("verify", "Run a numerical reference suite");
  ver->add_option("suite", suite, "multiplier | kernels | norms | geometry")->required();
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--kmax", kmax, "Largest mode checked");
  ver->add_option("--out", vout, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? bubble::kExitOk : bubble::kExitConfig;
  }

  try {
    if (*sim) {
      if (config_path.empty() == preset.empty()) {
        std::cerr << "config error: give exactly one of --config or --preset\n";
        return bubble::kExitConfig;
      }
      bubble::RunManifest m = preset.empty() ? bubble::load_manifest(config_path) : bubble::preset_manifest(preset);
      if (!out_dir.empty()) m.output_dir = out_dir;
      return bubble::cmd_simulate(m, m.output_dir);
    }
    return bubble::cmd_verify(suite, seed, kmax, vout);
  } catch (const bubble::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return bubble::kExitConfig;
  } catch (const bubble::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return bubble::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return bubble::kExitNumerical;
  }
}
