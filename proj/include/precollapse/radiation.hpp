#pragma once

#include <precollapse/vec3.hpp>

#include <cstddef>
#include <vector>

namespace precollapse::radiation {

enum class EmitterMode { Coherent, Incoherent };

/// Two dipoles sharing one polarization axis, separated by `separation`.
struct EmitterPair {
  Vec3 separation{1.0, 0.0, 0.0};
  Vec3 axis{0.0, 1.0, 0.0};
  double wavenumber{1.0};
  double relative_phase{0.0};
  EmitterMode mode{EmitterMode::Coherent};
};

struct DirectionSample {
  double theta{0.0};   ///< polar angle from +z
  double phi{0.0};     ///< azimuth from +x
  double intensity{0.0};
};

Vec3 direction_from_angles(double theta, double phi);

/// sin^2 of the angle between n and the dipole axis; equatorial peak = 1.
double single_dipole(const Vec3 &n, const Vec3 &axis);

/// Coherent: 2 D(n) (1 + cos(k n.d + delta)); incoherent: 2 D(n).
double pair_pattern(const EmitterPair &pair, const Vec3 &n);

/// Regular grid: theta_i = pi i / (n_theta - 1), phi_j = 2 pi j / n_phi,
/// row-major in theta. Throws InvalidArgument for fewer than 2 points per axis.
std::vector<DirectionSample> pattern_scan(const EmitterPair &pair, std::size_t n_theta, std::size_t n_phi);

} // namespace precollapse::radiation
