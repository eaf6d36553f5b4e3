#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "levi/error.hpp"
#include "levi/model.hpp"
#include "levi/units.hpp"

namespace levi::physics {

struct InertiaPair {
  double mass = 0.0;    // kg
  double moment = 0.0;  // kg m^2, about a short axis through the centre
};

/// Dimensionless electric susceptibilities along the long (s1) and short (s2) axes.
struct SusceptibilityPair {
  double s1 = 0.0;
  double s2 = 0.0;
};

inline double volume(const ParticleSpec& p) {
  return 4.0 / 3.0 * units::pi * p.semi_axis_long * p.semi_axis_short * p.semi_axis_short;
}

inline InertiaPair mass_and_inertia(const ParticleSpec& p) {
  const double mass = p.density * volume(p);
  const double a = p.semi_axis_long;
  const double b = p.semi_axis_short;
  return {mass, mass * (a * a + b * b) / 5.0};
}

/// Depolarization factors (N_long, N_short) of a prolate spheroid, N_long + 2 N_short = 1.
inline std::array<double, 2> depolarization_factors(const ParticleSpec& p) {
  if (p.semi_axis_long < p.semi_axis_short)
    throw Error(ErrorKind::DegenerateGeometry, "semi_axis_long < semi_axis_short: not a prolate spheroid");
  const double ratio = p.semi_axis_short / p.semi_axis_long;
  const double e2 = 1.0 - ratio * ratio;
  double n_long = 0.0;
  if (e2 < 2.5e-3) {
    // (1 - e^2)/e^3 (atanh e - e) expanded about the sphere; the closed form cancels badly here.
    double term = 1.0;
    n_long = 1.0 / 3.0;
    for (int n = 1; n <= 12; ++n) {
      term *= e2;
      n_long += term * (1.0 / (2 * n + 3) - 1.0 / (2 * n + 1));
    }
  } else {
    const double e = std::sqrt(e2);
    n_long = (1.0 - e2) / (e2 * e) * (std::atanh(e) - e);
  }
  return {n_long, 0.5 * (1.0 - n_long)};
}

inline SusceptibilityPair susceptibility(const ParticleSpec& p) {
  if (!(p.rel_permittivity > 1.0))
    throw Error(ErrorKind::Validation, "susceptibility requires rel_permittivity > 1");
  const auto [n_long, n_short] = depolarization_factors(p);
  const double chi = p.rel_permittivity - 1.0;
  return {chi / (1.0 + n_long * chi), chi / (1.0 + n_short * chi)};
}

/// kappa = 2 pi c / (4 L finesse), the energy decay rate in rad/s.
inline double cavity_linewidth(const CavitySpec& cavity) {
  return units::to_angular(units::speed_of_light / (4.0 * cavity.length * cavity.finesse));
}

namespace detail {

inline double gaussian_envelope(const PhysicalSetup& s) {
  const double r2 = s.pose.x * s.pose.x + s.pose.z * s.pose.z;
  return std::exp(-4.0 * units::pi * r2 / (s.cavity.wavelength * s.cavity.length));
}

// The coupling formulas divide a polarizability by epsilon0; the polarizability of
// the spheroid along axis i is epsilon0 * V * s_i.
inline std::array<double, 2> polarizability_over_eps0(const ParticleSpec& p, const SusceptibilityPair& s) {
  const double v = volume(p);
  return {v * s.s1, v * s.s2};
}

}  // namespace detail

/// Translational single-photon coupling (rad/s).
inline double coupling_g_ab(const PhysicalSetup& s, const InertiaPair& inertia, const SusceptibilityPair& sus) {
  const double lambda = s.cavity.wavelength;
  const double length = s.cavity.length;
  const double ky = s.cavity.wavenumber * s.pose.y;
  const double zero_point = std::sqrt(units::hbar / (2.0 * inertia.mass * s.freqs.omega_m));
  const auto [p1, p2] = detail::polarizability_over_eps0(s.particle, sus);
  const double cos_phi = std::cos(s.pose.phi);
  const double projected = p2 + cos_phi * cos_phi * (p1 - p2);
  return zero_point * 32.0 * units::pi * units::pi * units::speed_of_light * detail::gaussian_envelope(s) *
         std::cos(ky) * std::sin(ky) / (lambda * lambda * lambda * length * length) * projected;
}

/// Librational single-photon coupling (rad/s).
inline double coupling_g_ac(const PhysicalSetup& s, const InertiaPair& inertia, const SusceptibilityPair& sus) {
  const double lambda = s.cavity.wavelength;
  const double length = s.cavity.length;
  const double ky = s.cavity.wavenumber * s.pose.y;
  const double zero_point = std::sqrt(units::hbar / (2.0 * inertia.moment * s.freqs.omega_phi));
  const auto [p1, p2] = detail::polarizability_over_eps0(s.particle, sus);
  const double c = std::cos(ky);
  return zero_point * 8.0 * units::pi * units::speed_of_light * detail::gaussian_envelope(s) * c * c /
         (lambda * lambda * length * length) * (p1 - p2) * std::sin(2.0 * s.pose.phi);
}

/// Classical intracavity amplitude of one tone, alpha = Omega / (2 (Delta + i kappa / 2)).
inline cplx steady_amplitude(const DriveTone& tone, double kappa) {
  const cplx denom = 2.0 * cplx(tone.detuning, 0.5 * kappa);
  if (denom == cplx(0.0, 0.0))
    throw Error(ErrorKind::ZeroDenominator, "steady_amplitude: detuning and kappa are both zero");
  return tone.rabi / denom;
}

struct Displacements {
  double beta = 0.0;
  double gamma = 0.0;
};

inline Displacements steady_displacements(double g_ab, double g_ac, cplx alpha1, cplx alpha2,
                                          const ModeFrequencies& freqs) {
  const double intensity = std::norm(alpha1) + std::norm(alpha2);
  return {-g_ab * intensity / freqs.omega_m, -g_ac * intensity / freqs.omega_phi};
}

struct EffectiveCouplings {
  double G1 = 0.0;
  double G2 = 0.0;
  double G3 = 0.0;
};

namespace detail {

inline double denominator_tolerance(const ModeFrequencies& f) {
  return 1e-6 * std::max(f.omega_m, f.omega_phi);
}

inline double guarded(double denom, double tol, const char* term) {
  if (!(std::abs(denom) > tol))
    throw Error(ErrorKind::ResonantDenominator, std::string("sideband resonance in term ") + term);
  return 1.0 / denom;
}

}  // namespace detail

/// Beam-splitter couplings after eliminating the cavity. Phases of alpha are absorbed
/// into the mechanical modes, so only |alpha| enters.
inline EffectiveCouplings effective_couplings(double g_ab, double g_ac, cplx alpha1, cplx alpha2, double detuning1,
                                              double detuning2, const ModeFrequencies& f) {
  const double tol = detail::denominator_tolerance(f);
  using detail::guarded;
  const double inv_1pm = guarded(detuning1 + f.omega_m, tol, "Delta1 + omega_m");
  const double inv_1mm = guarded(detuning1 - f.omega_m, tol, "Delta1 - omega_m");
  const double inv_2pm = guarded(detuning2 + f.omega_m, tol, "Delta2 + omega_m");
  const double inv_2mm = guarded(detuning2 - f.omega_m, tol, "Delta2 - omega_m");
  const double inv_2pp = guarded(detuning2 + f.omega_phi, tol, "Delta2 + omega_phi");
  const double inv_2mp = guarded(detuning2 - f.omega_phi, tol, "Delta2 - omega_phi");
  const double inv_1pp = guarded(detuning1 + f.omega_phi, tol, "Delta1 + omega_phi");
  const double inv_1mp = guarded(detuning1 - f.omega_phi, tol, "Delta1 - omega_phi");

  const double n1 = std::norm(alpha1);
  const double n2 = std::norm(alpha2);
  const double cross = std::abs(alpha1) * std::abs(alpha2) * g_ab * g_ac;
  EffectiveCouplings out;
  out.G1 = g_ab * g_ab * (n1 * (inv_1pm + inv_1mm) + n2 * (inv_2pm + inv_2mm));
  out.G2 = g_ac * g_ac * (n2 * (inv_2pp + inv_2mp) + n1 * (inv_1pp + inv_1mp));
  // Only Delta1 appears here, unlike the symmetric G1/G2 structure.
  out.G3 = cross * (inv_1pm + inv_1mp);
  return out;
}

/// |G1 - G2| / max(|G1|, |G2|); zero when the beam splitter is balanced.
inline double beamsplitter_balance_residual(const SystemRates& rates) {
  const double scale = std::max(std::abs(rates.G1), std::abs(rates.G2));
  if (scale == 0.0) throw Error(ErrorKind::BothZero, "balance residual undefined for G1 = G2 = 0");
  return std::abs(rates.G1 - rates.G2) / scale;
}

struct PhotonFluctuation {
  double magnitude = 0.0;  // |alpha|
  double fluctuation = 0.0;  // sqrt|alpha|
  double ratio = 0.0;  // linear over nonlinear enhancement, |alpha| / sqrt|alpha|
};

inline PhotonFluctuation photon_fluctuation(cplx alpha) {
  const double m = std::abs(alpha);
  const double f = std::sqrt(m);
  return {m, f, m > 0.0 ? m / f : 0.0};
}

inline std::array<PhotonFluctuation, 2> photon_fluctuation_report(cplx alpha1, cplx alpha2) {
  return {photon_fluctuation(alpha1), photon_fluctuation(alpha2)};
}

struct SqueezerCouplings {
  double G1 = 0.0;  // common frequency shift of both mechanical modes
  double G3 = 0.0;  // pair-creation rate
  double delta = 0.0;
  std::string warning;
};

/// Two-mode-squeezing couplings for the drive condition
/// Delta1 - omega_m = Delta2 - omega_phi = delta.
///
/// Not printed in closed form alongside the beam-splitter couplings; obtained with the
/// same second-order elimination but with the sidebands exchanged (Delta - omega <->
/// Delta + omega):
///   G1' = g_ab^2 sum_j |alpha_j|^2 (1/(Delta_j - omega_m) + 1/(Delta_j + omega_m))
///   G3' = |alpha1 alpha2| g_ab g_ac (1/(Delta1 - omega_m) + 1/(Delta1 + omega_phi))
/// G1' equals the beam-splitter G1 because that sum is symmetric in the sideband sign.
inline SqueezerCouplings squeezer_couplings(double g_ab, double g_ac, cplx alpha1, cplx alpha2, double detuning1,
                                            double detuning2, const ModeFrequencies& f) {
  const double tol = detail::denominator_tolerance(f);
  const double delta = detuning1 - f.omega_m;
  if (std::abs((detuning2 - f.omega_phi) - delta) > tol)
    throw Error(ErrorKind::Spec, "squeezer drive requires Delta1 - omega_m == Delta2 - omega_phi");
  using detail::guarded;
  const double inv_1mm = guarded(detuning1 - f.omega_m, tol, "Delta1 - omega_m");
  const double inv_1pm = guarded(detuning1 + f.omega_m, tol, "Delta1 + omega_m");
  const double inv_2mm = guarded(detuning2 - f.omega_m, tol, "Delta2 - omega_m");
  const double inv_2pm = guarded(detuning2 + f.omega_m, tol, "Delta2 + omega_m");
  const double inv_1pp = guarded(detuning1 + f.omega_phi, tol, "Delta1 + omega_phi");

  SqueezerCouplings out;
  out.delta = delta;
  out.G1 = g_ab * g_ab * (std::norm(alpha1) * (inv_1mm + inv_1pm) + std::norm(alpha2) * (inv_2mm + inv_2pm));
  out.G3 = std::abs(alpha1) * std::abs(alpha2) * g_ab * g_ac * (inv_1mm + inv_1pp);
  const double enhanced = std::max(std::abs(g_ab * std::abs(alpha1)), std::abs(g_ac * std::abs(alpha2)));
  if (enhanced > 0.0 && std::abs(delta) / enhanced < 10.0)
    out.warning = "delta is less than 10x the drive-enhanced couplings; elimination is unreliable";
  return out;
}

/// Everything derivable from a setup and a pair of drive tones.
struct Derivation {
  InertiaPair inertia;
  SusceptibilityPair susceptibility;
  SystemRates rates;
  DriveTone tone1;
  DriveTone tone2;
  std::optional<SqueezerCouplings> squeezer;  // set when Delta1 - omega_m == Delta2 - omega_phi
};

inline Derivation derive(const PhysicalSetup& setup, const DriveTone& tone1, const DriveTone& tone2) {
  validate_setup(setup);
  Derivation d;
  d.tone1 = tone1;
  d.tone2 = tone2;
  d.inertia = mass_and_inertia(setup.particle);
  d.susceptibility = susceptibility(setup.particle);
  auto& r = d.rates;
  r.g_ab = coupling_g_ab(setup, d.inertia, d.susceptibility);
  r.g_ac = coupling_g_ac(setup, d.inertia, d.susceptibility);
  r.kappa = cavity_linewidth(setup.cavity);
  r.alpha1 = steady_amplitude(tone1, r.kappa);
  r.alpha2 = steady_amplitude(tone2, r.kappa);
  const auto disp = steady_displacements(r.g_ab, r.g_ac, r.alpha1, r.alpha2, setup.freqs);
  r.beta = disp.beta;
  r.gamma = disp.gamma;
  const auto eff = effective_couplings(r.g_ab, r.g_ac, r.alpha1, r.alpha2, tone1.detuning, tone2.detuning,
                                       setup.freqs);
  r.G1 = eff.G1;
  r.G2 = eff.G2;
  r.G3 = eff.G3;
  const double mismatch = (tone1.detuning - setup.freqs.omega_m) - (tone2.detuning - setup.freqs.omega_phi);
  if (std::abs(mismatch) <= detail::denominator_tolerance(setup.freqs))
    d.squeezer = squeezer_couplings(r.g_ab, r.g_ac, r.alpha1, r.alpha2, tone1.detuning, tone2.detuning, setup.freqs);
  return d;
}

/// Bisects over the second tone's Rabi frequency until G1 = G2. The signed gap
/// G1 - G2 is affine in |alpha2|^2, so a bracket found by doubling contains the only root.
inline double balance_second_rabi(const PhysicalSetup& setup, const DriveTone& tone1, DriveTone tone2,
                                  double rel_tol = 1e-12) {
  auto gap = [&](double rabi2) {
    tone2.rabi = rabi2;
    const auto r = derive(setup, tone1, tone2).rates;
    return r.G1 - r.G2;
  };
  double lo = 0.0;
  double hi = std::max(tone1.rabi, 1.0);
  const double g_lo = gap(lo);
  if (g_lo == 0.0) return 0.0;
  int doublings = 0;
  while (std::signbit(gap(hi)) == std::signbit(g_lo)) {
    hi *= 2.0;
    if (++doublings > 200) throw Error(ErrorKind::Spec, "no second-tone Rabi frequency balances G1 = G2");
  }
  for (int it = 0; it < 400 && (hi - lo) > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::signbit(gap(mid)) == std::signbit(g_lo))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace levi::physics
