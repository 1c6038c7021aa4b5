#include <precollapse/laser_probe.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/format.hpp>

#include <cmath>

namespace precollapse::laser {

using constants::pi;
using constants::two_pi;

namespace {

double reduce_phase(double phase) {
  double r = std::fmod(phase, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  return r >= two_pi ? 0.0 : r;
}

} // namespace

void LaserProbe::validate() const {
  if (!(wavelength > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "laser wavelength must be > 0");
  }
  if (std::abs(norm(direction) - 1.0) > 1e-9 || std::abs(norm(polarization) - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "laser direction and polarization must be unit vectors");
  }
  if (std::abs(dot(direction, polarization)) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "laser polarization must be orthogonal to propagation");
  }
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "p0 must lie in [0, 1]");
  }
}

double LaserProbe::wavenumber() const { return two_pi / wavelength; }

double interference_phase(const Vec3 &separation, const LaserProbe &probe) {
  // Reduce in units of wavelengths first to keep the fractional part exact
  // as long as possible.
  const double waves = dot(probe.direction, separation) / probe.wavelength;
  const double frac = waves - std::floor(waves);
  return reduce_phase(two_pi * frac);
}

double excitation_probability(const quantum::DensityMatrix2 &rho, double phase, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "p0 must lie in [0, 1]");
  }
  const std::complex<double> rotated = rho.rho_lr() * std::polar(1.0, phase);
  double p = p0 * (1.0 + 2.0 * rotated.real());
  if (p > 1.0 + 1e-12) {
    throw Error(ErrorKind::Saturation,
                "excitation probability " + format_double(p) +
                    " exceeds 1; lower p0 (constructive interference doubles the rate)");
  }
  // Rounding residue only: the density-matrix invariant bounds the exact value by [0, 2 p0].
  if (p < 0.0) {
    p = 0.0;
  }
  return p > 1.0 ? 1.0 : p;
}

SeparationTuning tune_separation(double target, double wavelength) {
  if (!(target > 0.0) || !(wavelength > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "target separation and wavelength must be > 0");
  }
  const double half = wavelength / 2.0;
  auto lo = static_cast<std::int64_t>(std::floor(target / half));
  if (lo % 2 == 0) {
    --lo;
  }
  if (lo < 1) {
    lo = 1;
  }
  const std::int64_t hi = lo + 2;
  const double d_lo = static_cast<double>(lo) * half;
  const double d_hi = static_cast<double>(hi) * half;
  const bool take_lo = std::abs(d_lo - target) <= std::abs(d_hi - target);
  SeparationTuning out;
  out.half_waves = take_lo ? lo : hi;
  out.separation = take_lo ? d_lo : d_hi;
  out.adjustment = std::abs(out.separation - target);
  out.parity = Parity::Odd;
  out.phase = pi;
  return out;
}

SeparationTuning classify_separation(double projected_separation, double wavelength) {
  if (!(wavelength > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "wavelength must be > 0");
  }
  const double half_waves = 2.0 * projected_separation / wavelength;
  const double nearest = std::round(half_waves);
  SeparationTuning out;
  out.separation = projected_separation;
  out.half_waves = static_cast<std::int64_t>(nearest);
  if (std::abs(pi * (half_waves - nearest)) <= kParityTolerance) {
    const bool odd = out.half_waves % 2 != 0;
    out.parity = odd ? Parity::Odd : Parity::Even;
    out.phase = odd ? pi : 0.0;
  } else {
    out.parity = Parity::Detuned;
    const double waves = projected_separation / wavelength;
    out.phase = reduce_phase(two_pi * (waves - std::floor(waves)));
  }
  return out;
}

double decay_probability(double t_available, double lifetime) {
  if (!(t_available >= 0.0) || !(lifetime > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "decay needs t >= 0 and lifetime > 0");
  }
  return -std::expm1(-t_available / lifetime);
}

} // namespace precollapse::laser
