#pragma once

#include <precollapse/experiment_config.hpp>
#include <precollapse/rng.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace precollapse::experiment {

struct AtomOutcome {
  Side detected_side{Side::Left};
  bool excited{false};
  bool photon_emitted{false};
  std::optional<Side> emission_side;
  std::optional<double> emission_time_before_detection; ///< s
  bool collapsed_at_laser{false};

  bool operator==(const AtomOutcome &) const = default;
};

struct ExperimentStats {
  std::uint64_t n_atoms{0};
  std::uint64_t n_photons{0};
  double photon_rate{0.0};       ///< photons per atom
  double photon_rate_stderr{0.0}; ///< binomial standard error
  std::uint64_t left_count{0};
  std::uint64_t right_count{0};
  std::uint64_t noise_counts{0};
  double run_duration{0.0};      ///< s
  std::uint64_t side_mismatches{0}; ///< emitting atoms whose emission side differs from detection side

  bool operator==(const ExperimentStats &) const = default;
};

/// Phase between the two beams seen by the laser, including exact snapping
/// for odd/even half-wavelength tuning.
double laser_phase(const ExperimentConfig &config);

/// One atom: side draw, coherence at the focal spot, excitation, decay.
/// Consumes a fixed number of draws from `rng`.
AtomOutcome simulate_atom(const ExperimentConfig &config, StreamRng &rng);

/// Atom `index` on its own stream keyed on (master_seed, index).
AtomOutcome simulate_atom_at(const ExperimentConfig &config, std::uint64_t index);

/// Worker count from PRECOLLAPSE_SIM_THREADS (capped by hardware), at least 1.
unsigned default_thread_count();

/// Runs config.atom_count atoms on `threads` workers (0 = default_thread_count()).
/// If `trace` is non-null it receives every outcome in atom order.
ExperimentStats run(const ExperimentConfig &config, unsigned threads = 0,
                    std::vector<AtomOutcome> *trace = nullptr);

enum class Verdict { HkConfirmed, Null, Inconclusive };

std::string to_string(Verdict v);

struct NullTestOptions {
  double significance{0.01};
  double required_power{0.9};
  /// HK-predicted photons per atom; 0 means unknown and a null verdict is never issued.
  double expected_signal_per_atom{0.0};
};

struct NullTestResult {
  Verdict verdict{Verdict::Inconclusive};
  std::uint64_t observed{0};     ///< photons + noise counts
  double expected_noise{0.0};
  double p_value{1.0};           ///< P(N >= observed | noise only)
  std::uint64_t critical_count{0};
  double power{0.0};             ///< P(N >= critical | noise + expected signal)
};

/// One-sided Poisson test of the observed count against dark_rate * run_duration.
NullTestResult null_test(const ExperimentStats &stats, double dark_rate, const NullTestOptions &options = {});

/// P(X >= k) for X ~ Poisson(mean).
double poisson_upper_tail(std::uint64_t k, double mean);

struct SweepCell {
  spacetime::ExtendedSpeed speed;
  double lead_time{0.0};
  ExperimentStats stats;
  bool predicted_precollapse{false}; ///< s <= collapse_speed_bound(D, mid-spot lead)
};

/// Runs every (speed, lead) pair with the HK-family scenario for that speed
/// (inf -> Conventional, c -> HellwigKraus). Rows follow `speeds`.
std::vector<SweepCell> scenario_sweep(const ExperimentConfig &base,
                                      const std::vector<spacetime::ExtendedSpeed> &speeds,
                                      const std::vector<double> &leads, unsigned threads = 0);

ScenarioKind scenario_for_speed(spacetime::ExtendedSpeed speed);

} // namespace precollapse::experiment

namespace precollapse::experiment {

/// Closed-form photons per atom for the configured scenario (no sampling):
/// average over both sides of excitation x decay probability, with the
/// detector-efficiency mixture of collapsed and coherent states.
double expected_photon_rate(const ExperimentConfig &config);

} // namespace precollapse::experiment
