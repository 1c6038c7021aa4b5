#pragma once

#include <precollapse/scenario.hpp>
#include <precollapse/spacetime.hpp>

#include <cstdint>
#include <utility>

namespace precollapse {

enum class Side { Left, Right };

inline char side_letter(Side s) { return s == Side::Left ? 'L' : 'R'; }

/// Parameters of the null experiment. Defaults are the nominal sodium
/// configuration: 3000 m/s beam, 3 m separation tuned to an odd number of
/// half wavelengths of the 589 nm line, 15 um focal spot, 16 ns lifetime.
struct ExperimentConfig {
  double beam_speed{3000.0};          ///< m/s
  double separation;                  ///< m, beam-to-beam at the laser crossing
  double wavelength{589e-9};          ///< m
  double laser_angle{0.0};            ///< rad between laser propagation and separation axis
  double laser_lead_time{5e-9};       ///< s from focal-spot exit to detection
  double focal_spot_width{15e-6};     ///< m
  double p0{1.0};                     ///< single-wavepacket excitation probability
  double lifetime{16e-9};             ///< s
  double detector_efficiency{1.0};
  double dark_rate{0.0};              ///< noise counts per second
  std::uint64_t atom_count{100000};
  double atom_flux{1e7};              ///< atoms per second
  ScenarioKind scenario{ScenarioKind::hellwig_kraus()};
  std::uint64_t master_seed{1};
  bool evaluate_at_spot_entry{false}; ///< worst-case coherence evaluation
  bool autotune{false};

  ExperimentConfig();

  /// Throws Error{Config} naming the offending field and its valid range.
  void validate() const;

  /// Time from the coherence-evaluation point in the focal spot to detection.
  double evaluation_lead_time() const;
  double crossing_time() const { return focal_spot_width / beam_speed; }
  /// Run duration implied by atom_count / atom_flux.
  double run_duration() const { return static_cast<double>(atom_count) / atom_flux; }

  bool operator==(const ExperimentConfig &) const = default;
};

/// Simultaneous detection events A (left, x = -D/2) and B (right, x = +D/2) at t = 0.
std::pair<spacetime::Event, spacetime::Event> detector_events(const ExperimentConfig &cfg);

/// Transversally static worldline travelling along z at the beam speed and
/// ending at the detector of the given side.
spacetime::Worldline beam_worldline(const ExperimentConfig &cfg, Side side);

} // namespace precollapse
