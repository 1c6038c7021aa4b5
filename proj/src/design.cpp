#include <precollapse/design.hpp>

#include <precollapse/error.hpp>
#include <precollapse/format.hpp>
#include <precollapse/spacetime.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace precollapse::design {

void BeamSpec::validate() const {
  if (!(mass > 0.0) || !(speed > 0.0) || !(grating_period > 0.0) || !(arm_length > 0.0)) {
    throw Error(ErrorKind::Config, "beam spec: mass, speed, grating period and arm length must be > 0");
  }
  if (diffraction_order < 0) {
    throw Error(ErrorKind::Config, "diffraction_order: expected >= 0");
  }
  if (grating_pairs < 1) {
    throw Error(ErrorKind::Config, "grating_pairs: expected >= 1");
  }
}

double de_broglie(double mass, double speed) {
  if (!(mass > 0.0) || !(speed > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "de Broglie wavelength needs positive mass and speed");
  }
  return constants::h / (mass * speed);
}

double diffraction_angle(double wavelength, double period, int order) {
  if (!(wavelength > 0.0) || !(period > 0.0) || order < 0) {
    throw Error(ErrorKind::InvalidArgument, "diffraction needs wavelength, period > 0 and order >= 0");
  }
  const double ratio = order * wavelength / period;
  if (ratio >= 1.0) {
    throw Error(ErrorKind::Evanescent, "diffraction order " + std::to_string(order) +
                                           " does not propagate (n lambda >= period)");
  }
  return std::asin(ratio);
}

TimingReport timing_budget(const ExperimentConfig &config) {
  config.validate();
  TimingReport r;
  r.crossing_time = config.crossing_time();
  const auto [a, b] = detector_events(config);
  r.precollapse_window =
      spacetime::precollapse_duration(beam_worldline(config, Side::Left), a, b,
                                      spacetime::ExtendedSpeed::finite(constants::c))
          .duration;
  // Decay clock starts mid-spot on average.
  r.decay_time_available = std::max(0.0, r.precollapse_window - r.crossing_time / 2.0);
  r.decay_efficiency = laser::decay_probability(r.decay_time_available, config.lifetime);
  r.shortfall = r.crossing_time + config.lifetime > r.precollapse_window;
  return r;
}

double beam_current_limit(double detection_time) {
  if (!(detection_time > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "detection time must be > 0");
  }
  return 1.0 / detection_time;
}

double parallelism_tolerance(double focal_spot_width, double wavelength) {
  if (!(focal_spot_width > 0.0) || !(wavelength >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "parallelism tolerance needs spot width > 0, wavelength >= 0");
  }
  return (wavelength / kParallelismMargin) / focal_spot_width;
}

double achievable_separation(const BeamSpec &spec) {
  spec.validate();
  const double angle = diffraction_angle(de_broglie(spec.mass, spec.speed), spec.grating_period,
                                         spec.diffraction_order);
  return spec.grating_pairs * 2.0 * spec.arm_length * std::tan(angle);
}

FeasibilityReport feasibility_report(const BeamSpec &spec, const ExperimentConfig &config) {
  spec.validate();
  config.validate();
  FeasibilityReport r;
  r.de_broglie_wavelength = de_broglie(spec.mass, spec.speed);
  r.diffraction_angle = diffraction_angle(r.de_broglie_wavelength, spec.grating_period, spec.diffraction_order);
  r.achievable_separation = achievable_separation(spec);
  r.tuning = laser::tune_separation(config.separation, config.wavelength);
  r.timing = timing_budget(config);
  r.beam_current_limit = beam_current_limit(kNominalDetectionTime);
  r.flux_margin = r.beam_current_limit / config.atom_flux;
  r.parallelism_tolerance = parallelism_tolerance(config.focal_spot_width, config.wavelength);

  std::ostringstream issues;
  bool blocking = false;
  if (r.achievable_separation < config.separation) {
    blocking = true;
    issues << "; achievable separation " << format_double(r.achievable_separation) << " m < required "
           << format_double(config.separation) << " m";
  }
  if (r.flux_margin < 1.0) {
    blocking = true;
    issues << "; beam flux exceeds the one-atom-per-detection-time limit";
  }
  if (r.timing.decay_time_available <= 0.0) {
    blocking = true;
    issues << "; no decay time left inside the pre-collapse window";
  }
  r.feasible = !blocking;
  if (blocking) {
    r.verdict = "infeasible" + issues.str();
  } else if (r.timing.shortfall) {
    r.verdict = "feasible with reduced decay efficiency (" + format_double(r.timing.decay_efficiency) + ")";
  } else {
    r.verdict = "feasible";
  }
  return r;
}

} // namespace precollapse::design
