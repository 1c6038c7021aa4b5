#pragma once

#include <precollapse/constants.hpp>
#include <precollapse/experiment_config.hpp>
#include <precollapse/laser_probe.hpp>

#include <cstdint>
#include <string>

namespace precollapse::design {

/// Interferometer beam: species, speed and grating layout.
struct BeamSpec {
  double mass{constants::sodium_mass};
  double speed{3000.0};
  double grating_period{20e-9};
  int diffraction_order{1};
  double arm_length{1.0};
  int grating_pairs{1};

  void validate() const;
  bool operator==(const BeamSpec &) const = default;
};

struct TimingReport {
  double crossing_time{0.0};
  double precollapse_window{0.0};
  double decay_time_available{0.0};
  double decay_efficiency{0.0};
  bool shortfall{false};

  bool operator==(const TimingReport &) const = default;
};

/// Margin of "small compared with the wavelength" in the parallelism tolerance.
inline constexpr double kParallelismMargin = 10.0;
/// Order-of-magnitude detector collapse time used for the beam-current limit.
inline constexpr double kNominalDetectionTime = 1e-12;

double de_broglie(double mass, double speed);

/// arcsin(n lambda / period); throws Evanescent when n lambda >= period.
double diffraction_angle(double wavelength, double period, int order);

/// Crossing time w/v, H-K window D/c (via the worldline geometry), decay
/// time available counted from mid-spot, and the decay shortfall flag.
TimingReport timing_budget(const ExperimentConfig &config);

/// One atom per detection time: 1 / detection_time.
double beam_current_limit(double detection_time);

/// Divergence that changes the separation by lambda/10 across the spot.
double parallelism_tolerance(double focal_spot_width, double wavelength);

/// 2 L tan(theta) per grating pair.
double achievable_separation(const BeamSpec &spec);

struct FeasibilityReport {
  double de_broglie_wavelength{0.0};
  double diffraction_angle{0.0};
  double achievable_separation{0.0};
  laser::SeparationTuning tuning;
  TimingReport timing;
  double beam_current_limit{0.0};
  double flux_margin{0.0};          ///< limit / configured flux
  double parallelism_tolerance{0.0};
  double parallelism_margin{kParallelismMargin};
  bool feasible{false};
  std::string verdict;

  bool operator==(const FeasibilityReport &) const = default;
};

FeasibilityReport feasibility_report(const BeamSpec &spec, const ExperimentConfig &config);

} // namespace precollapse::design
