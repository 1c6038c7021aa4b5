#pragma once

#include <precollapse/decoherence.hpp>
#include <precollapse/design.hpp>
#include <precollapse/experiment_config.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace precollapse::cli {

inline constexpr const char *kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitUsage = 64;

/// Everything a config file can set.
struct InputBundle {
  ExperimentConfig experiment;
  design::BeamSpec beam;
  decoherence::CollisionEnvironment collisions;
  std::vector<std::string> notes; ///< adjustments made while parsing (autotune)

  bool operator==(const InputBundle &o) const {
    return experiment == o.experiment && beam == o.beam && collisions == o.collisions;
  }
};

/// Flat `key = value` text, '#' starts a comment; keys carry their units.
/// Missing keys keep the nominal defaults. Throws Error{Config} naming the
/// field on unknown keys, malformed values or out-of-range values.
InputBundle parse_config_text(std::string_view text);
InputBundle parse_config(const std::filesystem::path &path);

/// Applies autotune (if set) and validates every section.
void finalize(InputBundle &bundle);

/// Canonical serialization: every key, fixed order, 17 significant digits.
std::string serialize_config(const InputBundle &bundle);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const InputBundle &bundle);

struct RunManifest {
  std::string config_hash;
  std::uint64_t master_seed{0};
  std::string tool_version{kToolVersion};
  std::string subcommand;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> outputs;
};

struct DispatchOptions {
  unsigned threads{0};             ///< 0 = PRECOLLAPSE_SIM_THREADS / hardware
  bool trace{true};                ///< simulate: write atoms.csv
  std::vector<std::string> sweep_speeds{"c", "1.5c", "2c", "3c", "inf"};
  std::vector<double> sweep_leads_ns{0.5, 2.0, 4.0, 6.0, 9.0};
  std::string pattern_mode{"incoherent"};
  std::optional<double> pattern_delta;       ///< default: laser phase of the config
  std::optional<double> pattern_separation;  ///< m; default: config separation
  std::size_t pattern_n_theta{91};
  std::size_t pattern_n_phi{180};
};

/// Parses a sweep speed token: "inf", "<x>c" or a number in m/s.
spacetime::ExtendedSpeed parse_speed_token(const std::string &token);

inline const std::vector<std::string> &subcommands() {
  static const std::vector<std::string> names{"simulate", "sweep", "pattern", "design", "geometry", "decohere"};
  return names;
}

/// Runs one subcommand, writing its JSON + CSV outputs and manifest.json
/// into out_dir. Returns the process exit code; errors are reported on stderr.
int dispatch(const std::string &subcommand, const InputBundle &inputs, const std::filesystem::path &out_dir,
             const DispatchOptions &options = {});

} // namespace precollapse::cli
