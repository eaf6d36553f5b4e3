#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "levi/dynamics.hpp"
#include "levi/integrator.hpp"
#include "levi/units.hpp"

// Closed-form amplitudes against numerical propagation of the same generator.
namespace levi::oracle {

inline constexpr std::uint64_t default_seed = 20170915;

struct Comparison {
  dynamics::Scheme scheme = dynamics::Scheme::Detuned;
  dynamics::SchemeParams params;
  double t_end = 0.0;
  double max_deviation = 0.0;
};

struct Summary {
  std::vector<Comparison> comparisons;
  double max_deviation = 0.0;
  bool passed(double tol) const { return max_deviation <= tol; }
};

inline Comparison compare(dynamics::Scheme scheme, const dynamics::SchemeParams& q, double t_end,
                          std::size_t samples = 201) {
  Comparison c{scheme, q, t_end, 0.0};
  const double delta = scheme == dynamics::Scheme::Resonant ? 0.0 : q.delta;
  const auto gen = integrator::build_subspace_generator(scheme, q.G, delta, q.kappa);
  const auto grid = integrator::linspace(0.0, t_end, samples);
  const auto result = integrator::propagate(gen, Eigen::Vector3cd(1.0, 0.0, 0.0), grid, 1e-12,
                                            integrator::Method::Exponential);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto numeric = integrator::to_closed_form_frame(result.states[k], delta, grid[k]);
    const auto exact = dynamics::amplitudes(scheme, grid[k], q);
    c.max_deviation = std::max({c.max_deviation, std::abs(numeric.c001 - exact.c001),
                                std::abs(numeric.c010 - exact.c010), std::abs(numeric.c100 - exact.c100)});
  }
  return c;
}

/// Headline points over [0, 2 t_transfer], then seeded random (G, delta, kappa) in
/// [0, 1e6] rad/s away from the exceptional points (|chi| > 1e-3 scale). Random
/// horizons are 2 t_transfer capped at 200 / scale.
inline Summary run(std::size_t random_tuples = 100, std::uint64_t seed = default_seed) {
  using units::khz;
  Summary s;
  auto add = [&](Comparison c) {
    s.max_deviation = std::max(s.max_deviation, c.max_deviation);
    s.comparisons.push_back(c);
  };

  const dynamics::SchemeParams headline{khz(50.0), khz(200.0), khz(75.2)};
  for (auto scheme : {dynamics::Scheme::Detuned, dynamics::Scheme::Resonant})
    add(compare(scheme, headline, 2.0 * dynamics::transfer_time(scheme, headline)));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> component(0.0, 1e6);
  std::size_t made = 0;
  while (made < random_tuples) {
    const dynamics::SchemeParams q{component(rng), component(rng), component(rng)};
    const double scale = std::max({q.G, q.delta, q.kappa});
    const auto spec = dynamics::conditional_spectrum(q.G, q.delta, q.kappa);
    const double resonant_root = std::sqrt(std::abs(32.0 * q.G * q.G - q.kappa * q.kappa));
    if (!(std::abs(spec.chi) > 1e-3 * scale) || !(resonant_root > 1e-3 * scale)) continue;
    ++made;
    for (auto scheme : {dynamics::Scheme::Detuned, dynamics::Scheme::Resonant}) {
      double t_end = 200.0 / scale;
      try {
        t_end = std::min(t_end, 2.0 * dynamics::transfer_time(scheme, q));
      } catch (const Error&) {
      }
      add(compare(scheme, q, t_end));
    }
  }
  return s;
}

}  // namespace levi::oracle
