#pragma once

#include <numbers>

namespace chiptrap::constants {

inline constexpr double pi = std::numbers::pi;

// SI values (CODATA 2018 where measured). mu0 is kept at its classical
// defined value 4*pi*1e-7 so that xi = mu0*I/(2*pi) stays exactly 2e-7*I.
inline constexpr double mu0 = 4.0e-7 * pi;            // T m / A
inline constexpr double mu_bohr = 9.2740100783e-24;   // J / T
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double tesla_per_gauss = 1.0e-4;

inline constexpr double rb87_mass_amu = 86.909;

}  // namespace chiptrap::constants
