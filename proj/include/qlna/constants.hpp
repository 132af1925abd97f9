#pragma once

namespace qlna {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kEpsilon0 = 8.8541878128e-12; // F / m
inline constexpr double kEpsilonSiO2 = 3.9;           // relative permittivity
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qlna
