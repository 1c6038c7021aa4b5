// precollapse-sim: command-line front end for the collapse simulator.
//
//   precollapse-sim <simulate|sweep|pattern|design|geometry|decohere>
//       [--config PATH] [--out DIR] [--seed N] [--scenario conventional|hk|speed:<m/s>]
//       [--atoms N] [--autotune]

#include <precollapse/cli.hpp>
#include <precollapse/error.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace cli = precollapse::cli;

int main(int argc, char **argv) {
  CLI::App app{"Relativistic pre-collapse simulator and experiment design toolkit"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> atoms;
  bool autotune = false;
  cli::DispatchOptions options;
  bool no_trace = false;
  std::optional<double> pattern_delta;
  std::optional<double> pattern_separation;

  app.add_option("--config", config_path, "flat key = value config file (defaults when omitted)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--scenario", scenario, "conventional | hk | speed:<m/s>");
  app.add_option("--atoms", atoms, "number of simulated atoms");
  app.add_flag("--autotune", autotune, "snap the separation to an odd number of half wavelengths");
  app.add_option("--threads", options.threads, "worker threads (0 = PRECOLLAPSE_SIM_THREADS / hardware)");

  auto *simulate = app.add_subcommand("simulate", "Monte Carlo null experiment and verdict");
  simulate->add_flag("--no-trace", no_trace, "skip the per-atom atoms.csv trace");
  auto *sweep = app.add_subcommand("sweep", "photon rate over (collapse speed, laser lead time)");
  sweep->add_option("--speeds", options.sweep_speeds, "speeds: inf, <x>c or m/s")->delimiter(',');
  sweep->add_option("--leads-ns", options.sweep_leads_ns, "laser lead times in ns")->delimiter(',');
  auto *pattern = app.add_subcommand("pattern", "radiation pattern of the scattered photons");
  pattern->add_option("--mode", options.pattern_mode, "coherent | incoherent")
      ->check(CLI::IsMember({"coherent", "incoherent"}));
  pattern->add_option("--delta", pattern_delta, "relative dipole phase (rad)");
  pattern->add_option("--separation-m", pattern_separation, "dipole separation (m)");
  pattern->add_option("--n-theta", options.pattern_n_theta, "polar grid points");
  pattern->add_option("--n-phi", options.pattern_n_phi, "azimuthal grid points");
  app.add_subcommand("design", "feasibility report for the beam and apparatus");
  app.add_subcommand("geometry", "pre-collapse apex and window table");
  app.add_subcommand("decohere", "detector phase-randomization time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return cli::kExitUsage;
  }

  cli::InputBundle inputs;
  try {
    inputs = config_path.empty() ? cli::parse_config_text("") : cli::parse_config(config_path);
    if (seed) {
      inputs.experiment.master_seed = *seed;
    }
    if (scenario) {
      inputs.experiment.scenario = precollapse::ScenarioKind::parse(*scenario);
    }
    if (atoms) {
      inputs.experiment.atom_count = *atoms;
    }
    if (autotune) {
      inputs.experiment.autotune = true;
    }
    cli::finalize(inputs);
  } catch (const precollapse::Error &e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return cli::kExitValidation;
  }
  for (const auto &note : inputs.notes) {
    std::cerr << note << "\n";
  }

  options.trace = !no_trace;
  options.pattern_delta = pattern_delta;
  options.pattern_separation = pattern_separation;
  const std::string sub = app.get_subcommands().front()->get_name();
  return cli::dispatch(sub, inputs, out_dir, options);
}
