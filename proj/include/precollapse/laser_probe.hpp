#pragma once

#include <precollapse/quantum_state.hpp>
#include <precollapse/vec3.hpp>

#include <cstdint>

namespace precollapse::laser {

/// Transverse probe laser. Atomic-structure factors of the transition
/// matrix element are folded into p0, the excitation probability of a
/// single collapsed wavepacket crossing the focal spot.
struct LaserProbe {
  double wavelength{589e-9};
  Vec3 direction{1.0, 0.0, 0.0};
  Vec3 polarization{0.0, 1.0, 0.0};
  double focal_spot_width{15e-6};
  double p0{1.0};

  /// Throws InvalidArgument on a non-positive wavelength, non-unit or
  /// non-orthogonal direction/polarization, or p0 outside [0, 1].
  void validate() const;
  double wavenumber() const;
};

enum class Parity { Odd, Even, Detuned };

struct SeparationTuning {
  double separation{0.0};   ///< m
  std::int64_t half_waves{0}; ///< n in d = n lambda / 2 (nearest integer when detuned)
  double phase{0.0};        ///< k.d reduced to [0, 2 pi); exactly pi / 0 when tuned
  Parity parity{Parity::Detuned};
  double adjustment{0.0};   ///< |d - d_target| for tune_separation, 0 otherwise
  bool operator==(const SeparationTuning &) const = default;
};

/// Phase residue (rad) below which a separation counts as an exact
/// multiple of half wavelengths.
inline constexpr double kParityTolerance = 1e-6;

/// k.d reduced to [0, 2 pi).
double interference_phase(const Vec3 &separation, const LaserProbe &probe);

/// P = p0 (1 + 2 Re(rho_LR e^{i phi})). Throws Saturation when P > 1.
double excitation_probability(const quantum::DensityMatrix2 &rho, double phase, double p0);

/// Nearest d = n lambda / 2 with n odd; ties go to the smaller n.
SeparationTuning tune_separation(double target, double wavelength);

/// Classifies a projected separation as odd/even/detuned and returns its
/// phase; tuned separations get the exact phase pi (odd) or 0 (even).
SeparationTuning classify_separation(double projected_separation, double wavelength);

/// 1 - exp(-t / tau).
double decay_probability(double t_available, double lifetime);

} // namespace precollapse::laser
