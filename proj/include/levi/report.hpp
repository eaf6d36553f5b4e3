#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "levi/physics.hpp"
#include "levi/units.hpp"

namespace levi::report {

struct RateLine {
  std::string name;
  double angular;  // rad/s
};

inline std::vector<RateLine> rate_lines(const physics::Derivation& d) {
  const auto& r = d.rates;
  std::vector<RateLine> lines{{"g_ab", r.g_ab},     {"g_ac", r.g_ac},     {"kappa", r.kappa},
                              {"Omega1", d.tone1.rabi}, {"Delta1", d.tone1.detuning}, {"Omega2", d.tone2.rabi},
                              {"Delta2", d.tone2.detuning}, {"G1", r.G1},   {"G2", r.G2},
                              {"G3", r.G3}};
  if (d.squeezer) {
    lines.push_back({"G1'", d.squeezer->G1});
    lines.push_back({"G3'", d.squeezer->G3});
    lines.push_back({"delta", d.squeezer->delta});
  }
  return lines;
}

/// Aligned text: every rate in rad/s and Hz, followed by dimensionless quantities.
inline void print_derivation(const physics::Derivation& d, std::ostream& os) {
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %18s %18s\n", "rate", "rad/s", "Hz");
  os << line;
  for (const auto& l : rate_lines(d)) {
    std::snprintf(line, sizeof line, "%-10s %18.10g %18.10g\n", l.name.c_str(), l.angular,
                  units::from_angular(l.angular));
    os << line;
  }
  const auto& r = d.rates;
  auto scalar = [&](const char* name, double v) {
    std::snprintf(line, sizeof line, "%-10s %18.10g\n", name, v);
    os << line;
  };
  os << '\n';
  scalar("alpha1.re", r.alpha1.real());
  scalar("alpha1.im", r.alpha1.imag());
  scalar("|alpha1|", std::abs(r.alpha1));
  scalar("alpha2.re", r.alpha2.real());
  scalar("alpha2.im", r.alpha2.imag());
  scalar("|alpha2|", std::abs(r.alpha2));
  scalar("beta", r.beta);
  scalar("gamma", r.gamma);
  scalar("mass", d.inertia.mass);
  scalar("moment", d.inertia.moment);
  scalar("s1", d.susceptibility.s1);
  scalar("s2", d.susceptibility.s2);
  try {
    scalar("balance", physics::beamsplitter_balance_residual(r));
  } catch (const Error&) {
    os << "balance    undefined (G1 = G2 = 0)\n";
  }
}

inline nlohmann::json derivation_json(const physics::Derivation& d) {
  nlohmann::json rates = nlohmann::json::object();
  for (const auto& l : rate_lines(d)) rates[l.name] = {{"rad_s", l.angular}, {"hz", units::from_angular(l.angular)}};
  const auto& r = d.rates;
  auto complex = [](cplx z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; };
  nlohmann::json out{{"rates", rates},
                     {"alpha1", complex(r.alpha1)},
                     {"alpha2", complex(r.alpha2)},
                     {"beta", r.beta},
                     {"gamma", r.gamma},
                     {"mass", d.inertia.mass},
                     {"moment", d.inertia.moment},
                     {"s1", d.susceptibility.s1},
                     {"s2", d.susceptibility.s2}};
  try {
    out["balance_residual"] = physics::beamsplitter_balance_residual(r);
  } catch (const Error&) {
    out["balance_residual"] = nullptr;
  }
  return out;
}

}  // namespace levi::report
