#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levi/error.hpp"
#include "levi/units.hpp"

namespace levi {

using cplx = std::complex<double>;

/// Prolate spheroid. Lengths are semi-axes in metres.
struct ParticleSpec {
  double density = 0.0;  // kg/m^3
  double semi_axis_long = 0.0;
  double semi_axis_short = 0.0;
  double rel_permittivity = 1.0;
};

struct CavitySpec {
  double length = 0.0;      // m
  double wavelength = 0.0;  // m
  double finesse = 0.0;
  double wavenumber = 0.0;  // 1/m

  static CavitySpec make(double length, double wavelength, double finesse) {
    return {length, wavelength, finesse, units::two_pi / wavelength};
  }
};

inline double normalize_angle(double phi) {
  double r = std::fmod(phi, units::pi);
  if (r < 0.0) r += units::pi;
  if (r >= units::pi) r = 0.0;
  return r;
}

/// Centre of mass relative to the cavity centre, and the angle between the
/// particle long axis and the cavity x axis. phi is kept in [0, pi).
struct ParticlePose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double phi = 0.0;

  static ParticlePose make(double x, double y, double z, double phi) {
    return {x, y, z, normalize_angle(phi)};
  }
};

struct ModeFrequencies {
  double omega_cav = 0.0;
  double omega_m = 0.0;    // translational
  double omega_phi = 0.0;  // librational
};

struct PhysicalSetup {
  ParticleSpec particle;
  CavitySpec cavity;
  ParticlePose pose;
  ModeFrequencies freqs;
};

/// One driving laser. detuning = omega_L - omega_cav.
struct DriveTone {
  double rabi = 0.0;
  double detuning = 0.0;
};

struct SystemRates {
  double g_ab = 0.0;
  double g_ac = 0.0;
  double kappa = 0.0;
  cplx alpha1{};
  cplx alpha2{};
  double beta = 0.0;
  double gamma = 0.0;
  double G1 = 0.0;
  double G2 = 0.0;
  double G3 = 0.0;
};

/// Amplitudes over (|0>a|01>bc, |0>a|10>bc, |1>a|00>bc).
struct SubspaceState {
  cplx c001{};
  cplx c010{};
  cplx c100{};

  double norm2() const { return std::norm(c001) + std::norm(c010) + std::norm(c100); }

  Eigen::Vector3cd to_vector() const { return {c001, c010, c100}; }
  static SubspaceState from_vector(const Eigen::Vector3cd& v) { return {v(0), v(1), v(2)}; }
};

/// Truncated Fock state; row-major over the modes, so the last mode varies fastest.
struct FockState {
  std::vector<int> cutoffs;
  Eigen::VectorXcd amplitudes;

  static std::size_t dimension(const std::vector<int>& cutoffs) {
    return std::accumulate(cutoffs.begin(), cutoffs.end(), std::size_t{1},
                           [](std::size_t acc, int c) { return acc * static_cast<std::size_t>(c + 1); });
  }

  std::size_t index(const std::vector<int>& occupations) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < cutoffs.size(); ++k)
      idx = idx * static_cast<std::size_t>(cutoffs[k] + 1) + static_cast<std::size_t>(occupations[k]);
    return idx;
  }

  std::vector<int> occupations(std::size_t idx) const {
    std::vector<int> occ(cutoffs.size());
    for (std::size_t k = cutoffs.size(); k-- > 0;) {
      const auto base = static_cast<std::size_t>(cutoffs[k] + 1);
      occ[k] = static_cast<int>(idx % base);
      idx /= base;
    }
    return occ;
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport check_setup(const PhysicalSetup& s) {
  ValidationReport r;
  auto fail = [&](std::string field, std::string reason) {
    r.violations.push_back({std::move(field), std::move(reason)});
  };
  auto positive = [&](const char* field, double v) {
    if (!(std::isfinite(v) && v > 0.0)) fail(field, "must be finite and > 0");
  };

  positive("density", s.particle.density);
  positive("semi_axis_long", s.particle.semi_axis_long);
  positive("semi_axis_short", s.particle.semi_axis_short);
  positive("rel_permittivity", s.particle.rel_permittivity);
  if (s.particle.semi_axis_long < s.particle.semi_axis_short)
    fail("semi_axis_long", "must be >= semi_axis_short (prolate spheroid)");

  positive("cavity_length", s.cavity.length);
  positive("wavelength", s.cavity.wavelength);
  positive("finesse", s.cavity.finesse);
  if (s.cavity.wavelength > 0.0) {
    const double expected = units::two_pi / s.cavity.wavelength;
    if (!(std::abs(s.cavity.wavenumber - expected) <= 1e-12 * expected))
      fail("wavenumber", "inconsistent with wavelength (k != 2 pi / lambda)");
  }

  for (auto [name, v] : {std::pair{"pose.x", s.pose.x}, {"pose.y", s.pose.y}, {"pose.z", s.pose.z}})
    if (!std::isfinite(v)) fail(name, "must be finite");
  if (!(s.pose.phi >= 0.0 && s.pose.phi < units::pi)) fail("pose.phi", "must be normalized to [0, pi)");

  positive("omega_cav", s.freqs.omega_cav);
  positive("omega_m", s.freqs.omega_m);
  positive("omega_phi", s.freqs.omega_phi);
  if (s.freqs.omega_phi > 0.0 && s.freqs.omega_m > 0.0 && !(s.freqs.omega_phi > s.freqs.omega_m))
    r.warnings.push_back("omega_phi <= omega_m: outside the librational-above-translational regime");
  return r;
}

/// Returns the setup unchanged, or throws ValidationError listing every violation.
inline const PhysicalSetup& validate_setup(const PhysicalSetup& s) {
  auto report = check_setup(s);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
  return s;
}

}  // namespace levi
