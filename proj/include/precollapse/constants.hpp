#pragma once

#include <numbers>

namespace precollapse::constants {

inline constexpr double c = 299'792'458.0;              // m/s, exact
inline constexpr double h = 6.626'070'15e-34;           // J s, exact
inline constexpr double hbar = 1.054'571'817e-34;       // J s
inline constexpr double atomic_mass_unit = 1.660'539'066'60e-27; // kg
inline constexpr double sodium_mass = 22.989'769'28 * atomic_mass_unit;
inline constexpr double hydrogen_mass = 1.007'825'032'07 * atomic_mass_unit;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace precollapse::constants
