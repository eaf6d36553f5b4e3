#pragma once

#include <numbers>

// SI throughout; every frequency inside the library is angular (rad/s).
namespace levi::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;    // F/m

constexpr double to_angular(double cyclic_hz) { return two_pi * cyclic_hz; }
constexpr double from_angular(double rad_per_s) { return rad_per_s / two_pi; }

constexpr double khz(double value) { return to_angular(value * 1e3); }

constexpr double degrees_to_radians(double deg) { return deg * pi / 180.0; }
constexpr double radians_to_degrees(double rad) { return rad * 180.0 / pi; }

}  // namespace levi::units
