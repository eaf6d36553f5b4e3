#pragma once

#include "levi/model.hpp"
#include "levi/units.hpp"

namespace fixtures {

/// rho = 3500 kg/m^3, 50 nm x 25 nm semi-axes, eps_r = 5.7, L = 10 mm,
/// lambda = 1540 nm, finesse 1e5, phi = 45 deg at (0, pi/4k, 0).
inline levi::PhysicalSetup reference_setup() {
  using namespace levi;
  PhysicalSetup s;
  s.particle = {3500.0, 50e-9, 25e-9, 5.7};
  s.cavity = CavitySpec::make(10e-3, 1540e-9, 1e5);
  s.pose = ParticlePose::make(0.0, 1540e-9 / 8.0, 0.0, units::degrees_to_radians(45.0));
  s.freqs = {units::two_pi * units::speed_of_light / 1540e-9, units::to_angular(247.7e3), units::to_angular(2.6e6)};
  return s;
}

/// Beam-splitter drive: Omega1/2pi = 2.66e9 Hz, Omega2/2pi = 5e10 Hz, delta/2pi = 200 kHz.
inline levi::DriveTone reference_tone1(const levi::ModeFrequencies& f) {
  return {levi::units::to_angular(2.66e9), levi::units::khz(200.0) - f.omega_m};
}
inline levi::DriveTone reference_tone2(const levi::ModeFrequencies& f) {
  return {levi::units::to_angular(5.0e10), levi::units::khz(200.0) - f.omega_phi};
}

}  // namespace fixtures
