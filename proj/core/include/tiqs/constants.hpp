#pragma once

namespace tiqs::constants {

// CODATA 2018
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
inline constexpr double atomic_mass_unit = 1.66053906660e-27;
inline constexpr double hbar = 1.054571817e-34;

inline constexpr double yb171_mass = 170.936323 * atomic_mass_unit;

// e^2 / (4 pi eps0)
inline constexpr double coulomb_constant_e2 =
    elementary_charge * elementary_charge / (4.0 * 3.14159265358979323846 * vacuum_permittivity);

}  // namespace tiqs::constants
