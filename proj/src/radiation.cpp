#include <precollapse/radiation.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>

#include <algorithm>
#include <cmath>

namespace precollapse::radiation {

Vec3 direction_from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double single_dipole(const Vec3 &n, const Vec3 &axis) {
  const double cos_angle = dot(n, axis) / (norm(n) * norm(axis));
  return std::max(0.0, 1.0 - cos_angle * cos_angle);
}

double pair_pattern(const EmitterPair &pair, const Vec3 &n) {
  const double dipole = single_dipole(n, pair.axis);
  if (pair.mode == EmitterMode::Incoherent) {
    return 2.0 * dipole;
  }
  const double path_phase = pair.wavenumber * dot(n, pair.separation) + pair.relative_phase;
  return std::max(0.0, 2.0 * dipole * (1.0 + std::cos(path_phase)));
}

std::vector<DirectionSample> pattern_scan(const EmitterPair &pair, std::size_t n_theta, std::size_t n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw Error(ErrorKind::InvalidArgument, "pattern_scan needs at least 2 points per axis");
  }
  std::vector<DirectionSample> out;
  out.reserve(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = constants::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = constants::two_pi * static_cast<double>(j) / static_cast<double>(n_phi);
      out.push_back({theta, phi, pair_pattern(pair, direction_from_angles(theta, phi))});
    }
  }
  return out;
}

} // namespace precollapse::radiation
