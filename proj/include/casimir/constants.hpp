#pragma once

#include <numbers>

namespace casimir::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 299792458.0;                 // m/s
inline constexpr double k_B = 1.380649e-23;              // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C

// 1 eV / hbar in rad/s.
inline constexpr double ev_to_rad_s = elementary_charge / hbar;

inline constexpr double pi = std::numbers::pi;

inline constexpr const char* codata_version = "CODATA 2018";

// Default gold parameters: omega_p = 8.9 eV, gamma = 0.035 eV.
inline constexpr double gold_plasma_frequency = 8.9 * ev_to_rad_s;
inline constexpr double gold_relaxation_rate = 0.035 * ev_to_rad_s;

}  // namespace casimir::constants
