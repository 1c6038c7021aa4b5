#include <precollapse/decoherence.hpp>

#include <precollapse/error.hpp>

#include <algorithm>
#include <cmath>

namespace precollapse::decoherence {

void CollisionEnvironment::validate() const {
  if (!(atom_mass > 0.0) || !(atom_speed > 0.0) || !(mean_free_path > 0.0) || !(phase_threshold > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "collision environment: mass, speed, mean free path and threshold must be > 0");
  }
}

double phase_step(double kinetic_energy, double time_between_collisions) {
  if (!(kinetic_energy >= 0.0) || !(time_between_collisions >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "phase_step inputs must be >= 0");
  }
  return kinetic_energy * time_between_collisions / constants::hbar;
}

double coherence_after(std::uint64_t n_collisions, double phase_step_rms) {
  const double exponent = -0.5 * static_cast<double>(n_collisions) * phase_step_rms * phase_step_rms;
  return std::max(0.0, std::exp(exponent));
}

std::uint64_t collisions_to_collapse(const CollisionEnvironment &env) {
  env.validate();
  const double sigma = phase_step(env.kinetic_energy(), env.collision_interval());
  if (sigma == 0.0) {
    throw Error(ErrorKind::NeverCollapses, "zero phase kick per collision: coherence never decays");
  }
  const double ratio = env.phase_threshold / sigma;
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(ratio * ratio)));
  while (std::sqrt(static_cast<double>(n)) * sigma < env.phase_threshold) {
    ++n;
  }
  while (n > 1 && std::sqrt(static_cast<double>(n - 1)) * sigma >= env.phase_threshold) {
    --n;
  }
  return n;
}

double time_to_collapse(const CollisionEnvironment &env) {
  return static_cast<double>(collisions_to_collapse(env)) * env.collision_interval();
}

} // namespace precollapse::decoherence
