#include <precollapse/experiment_config.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/laser_probe.hpp>

#include <cmath>
#include <string>

namespace precollapse {

namespace {

void check(bool ok, const char *field, const char *range) {
  if (!ok) {
    throw Error(ErrorKind::Config, std::string(field) + ": value out of range, expected " + range);
  }
}

} // namespace

ExperimentConfig::ExperimentConfig() : separation(laser::tune_separation(3.0, 589e-9).separation) {}

void ExperimentConfig::validate() const {
  check(std::isfinite(beam_speed) && beam_speed > 0.0 && beam_speed < constants::c, "beam_speed_m_per_s",
        "(0, c)");
  check(std::isfinite(separation) && separation > 0.0, "separation_m", "> 0");
  check(std::isfinite(wavelength) && wavelength > 0.0, "laser_wavelength_m", "> 0");
  check(std::isfinite(laser_angle) && std::abs(laser_angle) < constants::pi / 2, "laser_angle_rad",
        "(-pi/2, pi/2)");
  check(std::isfinite(laser_lead_time) && laser_lead_time >= 0.0, "laser_lead_time_s", ">= 0");
  check(std::isfinite(focal_spot_width) && focal_spot_width > 0.0, "focal_spot_width_m", "> 0");
  check(p0 >= 0.0 && p0 <= 1.0, "peak_excitation_p0", "[0, 1]");
  check(std::isfinite(lifetime) && lifetime > 0.0, "lifetime_s", "> 0");
  check(detector_efficiency >= 0.0 && detector_efficiency <= 1.0, "detector_efficiency", "[0, 1]");
  check(std::isfinite(dark_rate) && dark_rate >= 0.0, "dark_rate_per_s", ">= 0");
  check(atom_count >= 1, "atom_count", ">= 1");
  check(std::isfinite(atom_flux) && atom_flux > 0.0, "atom_flux_per_s", "> 0");
}

double ExperimentConfig::evaluation_lead_time() const {
  const double offset = evaluate_at_spot_entry ? focal_spot_width / beam_speed
                                               : focal_spot_width / (2.0 * beam_speed);
  return laser_lead_time + offset;
}

std::pair<spacetime::Event, spacetime::Event> detector_events(const ExperimentConfig &cfg) {
  return {spacetime::Event{0.0, -cfg.separation / 2.0, 0.0, 0.0},
          spacetime::Event{0.0, cfg.separation / 2.0, 0.0, 0.0}};
}

spacetime::Worldline beam_worldline(const ExperimentConfig &cfg, Side side) {
  const auto [a, b] = detector_events(cfg);
  return {side == Side::Left ? a : b, Vec3{0.0, 0.0, cfg.beam_speed}};
}

} // namespace precollapse
