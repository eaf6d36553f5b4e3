#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>
#include <tuple>
#include <utility>

#include "levi/error.hpp"
#include "levi/model.hpp"
#include "levi/units.hpp"

// Closed-form single-excitation dynamics. Frequencies in rad/s, hbar = 1.
namespace levi::dynamics {

enum class Scheme { Ideal, Detuned, Resonant, Beamsplitter };

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Ideal: return "ideal";
    case Scheme::Detuned: return "detuned";
    case Scheme::Resonant: return "resonant";
    case Scheme::Beamsplitter: return "beamsplitter";
  }
  return "unknown";
}

inline std::optional<Scheme> scheme_from_string(std::string_view s) {
  if (s == "ideal" || s == "ideal-resonant") return Scheme::Ideal;
  if (s == "detuned") return Scheme::Detuned;
  if (s == "resonant") return Scheme::Resonant;
  if (s == "beamsplitter") return Scheme::Beamsplitter;
  return std::nullopt;
}

/// G is the common enhanced coupling |g_ab alpha1| = |g_ac alpha2|. For the
/// beam-splitter scheme G is the exchange rate G3 and G1 the common shift.
struct SchemeParams {
  double G = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
  double G1 = 0.0;
};

struct ConditionalSpectrum {
  cplx chi{};
  cplx e2{};
  cplx e3{};
};

struct TransferReport {
  double time = 0.0;
  double fidelity = 0.0;
  double probability = 0.0;
  Scheme scheme = Scheme::Detuned;
};

namespace detail {
inline double degeneracy_tolerance(double G, double delta, double kappa) {
  return 1e-9 * std::max({std::abs(G), std::abs(delta), std::abs(kappa), 1.0});
}
}  // namespace detail

/// Lossless resonant exchange from |001>.
inline SubspaceState resonant_three_mode_amplitudes(double t, double G) {
  const double phase = std::sqrt(2.0) * G * t;
  const double c = std::cos(phase);
  return {cplx(0.5 * (1.0 + c)), cplx(-0.5 * (1.0 - c)), cplx(0.0, -std::sqrt(2.0) / 2.0 * std::sin(phase))};
}

enum class Frame { Rotating, Lab };

struct BeamsplitterState {
  cplx c01{};  // |0>b |1>c
  cplx c10{};  // |1>b |0>c
};

inline BeamsplitterState beamsplitter_amplitudes(double t, double G1, double G3, Frame frame = Frame::Rotating,
                                                 const std::optional<ModeFrequencies>& freqs = std::nullopt) {
  const cplx plus = std::exp(cplx(0.0, -(G1 + G3) * t));
  const cplx minus = std::exp(cplx(0.0, -(G1 - G3) * t));
  BeamsplitterState s{0.5 * (plus + minus), 0.5 * (plus - minus)};
  if (frame == Frame::Lab) {
    if (!freqs) throw Error(ErrorKind::Spec, "lab-frame beam-splitter amplitudes need mode frequencies");
    s.c01 *= std::exp(cplx(0.0, -freqs->omega_phi * t));
    s.c10 *= std::exp(cplx(0.0, -freqs->omega_m * t));
  }
  return s;
}

/// Spectrum of the no-jump Hamiltonian in the single-excitation subspace.
/// chi is the principal square root of 4 delta^2 + 32 G^2 + 4 i delta kappa - kappa^2.
inline ConditionalSpectrum conditional_spectrum(double G, double delta, double kappa) {
  const cplx chi = std::sqrt(cplx(4.0 * delta * delta + 32.0 * G * G - kappa * kappa, 4.0 * delta * kappa));
  const cplx base(-2.0 * delta, -kappa);
  return {chi, 0.25 * (base - chi), 0.25 * (base + chi)};
}

/// No-jump amplitudes for the off-resonant drive, starting from |001>.
inline SubspaceState detuned_conditional_amplitudes(double t, double G, double delta, double kappa) {
  const auto spec = conditional_spectrum(G, delta, kappa);
  const cplx chi = spec.chi;
  if (!(std::abs(chi) > detail::degeneracy_tolerance(G, delta, kappa)))
    throw Error(ErrorKind::DegenerateSpectrum, "detuned spectrum at an exceptional point (chi = 0); use the propagator");

  // p * m = (2 delta + i kappa)^2 - chi^2 = -32 G^2. The smaller factor is recovered
  // from that product to avoid cancellation when G << delta.
  const cplx s(2.0 * delta, kappa);
  cplx p = s + chi;
  cplx m = s - chi;
  const double g2 = 32.0 * G * G;
  if (std::abs(p) >= std::abs(m)) {
    m = -g2 / p;
  } else {
    p = -g2 / m;
  }

  const cplx i(0.0, 1.0);
  const cplx e3 = std::exp(-i * spec.e3 * t);
  const cplx e2 = std::exp(-i * spec.e2 * t);
  const cplx shared = p / (4.0 * chi) * e3 - m / (4.0 * chi) * e2;
  // -(p m) / (16 G chi) simplifies to 2 G / chi, which stays finite at G = 0.
  const cplx c3 = std::exp(-i * delta * t) * (2.0 * G / chi) * (e3 - e2);
  return {0.5 + shared, -0.5 + shared, c3};
}

/// No-jump amplitudes for the resonant drive, starting from |001>. For
/// 32 G^2 < kappa^2 the square root goes imaginary and the trig becomes hyperbolic.
///
/// The kappa sin term carries kappa / (2 w): that is the delta -> 0 limit of the
/// detuned solution and the only coefficient satisfying dC1/dt(0) = 0.
inline SubspaceState resonant_conditional_amplitudes(double t, double G, double kappa) {
  const cplx w = std::sqrt(cplx(32.0 * G * G - kappa * kappa, 0.0));
  if (!(std::abs(w) > detail::degeneracy_tolerance(G, 0.0, kappa)))
    throw Error(ErrorKind::DegenerateSpectrum, "resonant spectrum degenerate at 32 G^2 = kappa^2");
  const double decay = std::exp(-kappa * t / 4.0);
  const cplx arg = w * t / 4.0;
  const cplx c = decay * std::cos(arg);
  const cplx sn = decay * std::sin(arg);
  const cplx shared = 0.5 * c + kappa / (2.0 * w) * sn;
  return {0.5 + shared, -0.5 + shared, cplx(0.0, -4.0 * G) / w * sn};
}

/// (F, P): branch probability and overlap of the normalized branch with |010>.
inline std::pair<double, double> fidelity_and_probability(const SubspaceState& state) {
  const double p = state.norm2();
  if (!(p > 1e-300)) throw Error(ErrorKind::VanishedBranch, "no-jump branch has vanished");
  return {std::abs(state.c010) / std::sqrt(p), p};
}

inline double transfer_time(Scheme scheme, const SchemeParams& q) {
  switch (scheme) {
    case Scheme::Ideal:
      if (!(q.G > 0.0)) throw Error(ErrorKind::NoTransfer, "ideal transfer needs G > 0");
      return units::pi / (std::sqrt(2.0) * q.G);
    case Scheme::Detuned: {
      const double denom = 2.0 * q.G * q.G - q.kappa * q.kappa / 16.0;
      if (!(denom > 0.0)) throw Error(ErrorKind::NoTransfer, "detuned transfer time: 2 G^2 <= kappa^2 / 16");
      const double t = units::pi * q.delta / denom;
      if (!(t > 0.0)) throw Error(ErrorKind::NoTransfer, "detuned transfer time: delta must be positive");
      return t;
    }
    case Scheme::Resonant: {
      const double arg = 32.0 * q.G * q.G - q.kappa * q.kappa;
      if (!(arg > 0.0)) throw Error(ErrorKind::NoTransfer, "resonant transfer: 32 G^2 <= kappa^2 (overdamped)");
      return 4.0 * units::pi / std::sqrt(arg);
    }
    case Scheme::Beamsplitter:
      if (q.G == 0.0) throw Error(ErrorKind::NoTransfer, "beam-splitter transfer needs G3 != 0");
      return units::pi / (2.0 * std::abs(q.G));
  }
  throw Error(ErrorKind::Spec, "unknown scheme");
}

/// Subspace amplitudes of any scheme at time t. The beam-splitter's two amplitudes
/// map onto c001 (|01>bc) and c010 (|10>bc); the cavity slot stays empty.
inline SubspaceState amplitudes(Scheme scheme, double t, const SchemeParams& q) {
  switch (scheme) {
    case Scheme::Ideal: return resonant_three_mode_amplitudes(t, q.G);
    case Scheme::Detuned: return detuned_conditional_amplitudes(t, q.G, q.delta, q.kappa);
    case Scheme::Resonant: return resonant_conditional_amplitudes(t, q.G, q.kappa);
    case Scheme::Beamsplitter: {
      const auto bs = beamsplitter_amplitudes(t, q.G1, q.G);
      return {bs.c01, bs.c10, cplx{}};
    }
  }
  throw Error(ErrorKind::Spec, "unknown scheme");
}

inline TransferReport evaluate_transfer(Scheme scheme, const SchemeParams& q) {
  TransferReport r;
  r.scheme = scheme;
  r.time = transfer_time(scheme, q);
  std::tie(r.fidelity, r.probability) = fidelity_and_probability(amplitudes(scheme, r.time, q));
  return r;
}

struct FidelityPeak {
  double time = 0.0;
  double fidelity = 0.0;
};

/// Global F maximum on [t_lo, t_hi]: uniform scan, then golden-section refinement
/// inside the bracketing samples.
inline FidelityPeak locate_fidelity_maximum(Scheme scheme, const SchemeParams& q, double t_lo, double t_hi,
                                            int samples = 4001) {
  auto fid = [&](double t) { return fidelity_and_probability(amplitudes(scheme, t, q)).first; };
  const double h = (t_hi - t_lo) / (samples - 1);
  int best = 0;
  double best_f = -1.0;
  for (int k = 0; k < samples; ++k) {
    const double f = fid(t_lo + h * k);
    if (f > best_f) {
      best_f = f;
      best = k;
    }
  }
  double a = t_lo + h * std::max(best - 1, 0);
  double b = t_lo + h * std::min(best + 1, samples - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fid(x1);
  double f2 = fid(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fid(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fid(x1);
    }
  }
  const double t = 0.5 * (a + b);
  const double f = fid(t);
  return f >= best_f ? FidelityPeak{t, f} : FidelityPeak{t_lo + h * best, best_f};
}

}  // namespace levi::dynamics
