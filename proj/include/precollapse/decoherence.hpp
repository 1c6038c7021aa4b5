#pragma once

#include <precollapse/constants.hpp>

#include <cstdint>

namespace precollapse::decoherence {

/// Detector medium seen by an incident atom. Defaults: sodium at 500 m/s
/// in an ordinary solid (0.1 nm between collisions).
struct CollisionEnvironment {
  double atom_mass{constants::sodium_mass};
  double atom_speed{500.0};
  double mean_free_path{0.1e-9};
  double phase_threshold{constants::two_pi};

  void validate() const;
  double kinetic_energy() const { return 0.5 * atom_mass * atom_speed * atom_speed; }
  double collision_interval() const { return mean_free_path / atom_speed; }

  bool operator==(const CollisionEnvironment &) const = default;
};

/// Random phase accumulated between collisions: KE * t / hbar.
double phase_step(double kinetic_energy, double time_between_collisions);

/// |rho_LR| suppression exp(-n sigma^2 / 2) after n independent Gaussian kicks.
double coherence_after(std::uint64_t n_collisions, double phase_step_rms);

/// Smallest number of collisions n with sqrt(n) sigma >= threshold.
/// Throws NeverCollapses for sigma == 0.
std::uint64_t collisions_to_collapse(const CollisionEnvironment &env);

/// collisions_to_collapse(env) * collision interval.
double time_to_collapse(const CollisionEnvironment &env);

} // namespace precollapse::decoherence
