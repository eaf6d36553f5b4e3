#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "levi/config.hpp"
#include "levi/dynamics.hpp"
#include "levi/physics.hpp"
#include "levi/units.hpp"

// Tabulates every number quoted for the reference configuration next to the value
// this library computes, with the tolerance used to call it a match.
namespace levi::claims {

enum class Status { Match, Mismatch, NotAssertable };

constexpr const char* to_string(Status s) {
  switch (s) {
    case Status::Match: return "match";
    case Status::Mismatch: return "mismatch";
    case Status::NotAssertable: return "not-assertable";
  }
  return "unknown";
}

struct Row {
  std::string quantity;
  std::string unit;
  double quoted = 0.0;
  double computed = 0.0;
  std::string tolerance;
  Status status = Status::NotAssertable;
  std::string note;
};

struct Report {
  std::vector<Row> rows;
  std::vector<std::string> notes;

  const Row* find(const std::string& quantity) const {
    for (const auto& r : rows)
      if (r.quantity == quantity) return &r;
    return nullptr;
  }
};

// Operating point used for both headline transfer figures (cyclic kHz).
inline constexpr double headline_G_khz = 50.0;
inline constexpr double headline_delta_khz = 200.0;
inline constexpr double headline_kappa_khz = 75.2;

namespace detail {

inline Row relative(std::string quantity, std::string unit, double quoted, double computed, double rel_tol,
                    std::string note = {}) {
  Row r{std::move(quantity), std::move(unit), quoted, computed, {}, Status::Mismatch, std::move(note)};
  char buf[32];
  std::snprintf(buf, sizeof buf, "rel %g", rel_tol);
  r.tolerance = buf;
  if (std::abs(computed - quoted) <= rel_tol * std::abs(quoted)) r.status = Status::Match;
  return r;
}

inline Row absolute(std::string quantity, double quoted, double computed, double abs_tol) {
  Row r{std::move(quantity), "", quoted, computed, {}, Status::Mismatch, {}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "abs %g", abs_tol);
  r.tolerance = buf;
  if (std::abs(computed - quoted) <= abs_tol) r.status = Status::Match;
  return r;
}

inline Row order_of_magnitude(std::string quantity, double quoted_exponent_lo, double quoted_exponent_hi,
                              double computed) {
  Row r{std::move(quantity), "", std::pow(10.0, quoted_exponent_lo), computed, {}, Status::Mismatch, {}};
  char buf[48];
  std::snprintf(buf, sizeof buf, "log10 in [%g, %g]", quoted_exponent_lo - 0.5, quoted_exponent_hi + 0.5);
  r.tolerance = buf;
  const double e = computed > 0.0 ? std::log10(computed) : -INFINITY;
  if (e >= quoted_exponent_lo - 0.5 && e <= quoted_exponent_hi + 0.5) r.status = Status::Match;
  return r;
}

inline Row unassertable(std::string quantity, std::string unit, double quoted, double computed, std::string note) {
  return {std::move(quantity), std::move(unit), quoted, computed, "-", Status::NotAssertable, std::move(note)};
}

}  // namespace detail

/// Without a drive block the report uses zero Rabi frequencies at the beam-splitter
/// condition with delta / 2 pi = 200 kHz, so every effective row renders as zero.
inline Report claims_report(const config::Config& cfg) {
  using units::from_angular;
  using units::khz;
  Report rep;
  const auto& setup = cfg.setup;

  config::DriveConfig drive;
  if (cfg.drive) {
    drive = *cfg.drive;
  } else {
    const double delta = khz(headline_delta_khz);
    drive.tone1 = {0.0, delta - setup.freqs.omega_m};
    drive.tone2 = {0.0, delta - setup.freqs.omega_phi};
    drive.delta = delta;
    drive.sideband = "beamsplitter";
    rep.notes.push_back("no drive block: zero Rabi frequencies assumed");
  }
  const auto d = physics::derive(setup, drive.tone1, drive.tone2);
  const auto& r = d.rates;

  rep.rows.push_back(detail::relative("kappa/2pi", "kHz", 75.2, from_angular(r.kappa) / 1e3, 0.01,
                                      "kappa/2pi = c / (4 L finesse)"));

  const char* unit_note =
      "quoted as /2pi Hz; the same formula evaluated in rad/s reproduces the quoted number (see the rad/s row)";
  rep.rows.push_back(detail::relative("g_ab/2pi", "Hz", 0.3056, from_angular(r.g_ab), 0.10, unit_note));
  rep.rows.push_back(detail::relative("g_ab (quoted number read as rad/s)", "rad/s", 0.3056, r.g_ab, 0.10));
  rep.rows.push_back(detail::relative("g_ac/2pi", "Hz", 0.2189, from_angular(r.g_ac), 0.10, unit_note));
  rep.rows.push_back(detail::relative("g_ac (quoted number read as rad/s)", "rad/s", 0.2189, r.g_ac, 0.10));

  rep.rows.push_back(detail::order_of_magnitude("|alpha1|", 4.0, 5.0, std::abs(r.alpha1)));
  rep.rows.push_back(detail::order_of_magnitude("|alpha2|", 4.0, 5.0, std::abs(r.alpha2)));
  const auto fluct = physics::photon_fluctuation_report(r.alpha1, r.alpha2);
  rep.rows.push_back(detail::order_of_magnitude("sqrt|alpha1| (linear/nonlinear ratio)", 2.0, 2.0, fluct[0].fluctuation));
  rep.rows.push_back(detail::order_of_magnitude("sqrt|alpha2| (linear/nonlinear ratio)", 2.0, 2.0, fluct[1].fluctuation));

  rep.rows.push_back(detail::unassertable(
      "G3/2pi", "kHz", 25.0, from_angular(r.G3) / 1e3,
      "the quoted value does not follow from the quoted couplings, drives and detuning; both shown"));
  double t_bs = std::nan("");
  std::string t_note = "t = pi / (2 |G3|); the quoted pi / (2 G3^2) is not dimensionally a time";
  try {
    t_bs = dynamics::transfer_time(dynamics::Scheme::Beamsplitter, {r.G3, 0.0, 0.0, r.G1});
  } catch (const Error& e) {
    t_note = std::string("no transfer: ") + e.what();
  }
  rep.rows.push_back(detail::unassertable("beam-splitter transfer time", "s", 1e-5, t_bs, t_note));

  const dynamics::SchemeParams headline{khz(headline_G_khz), khz(headline_delta_khz), khz(headline_kappa_khz)};
  const auto det = dynamics::evaluate_transfer(dynamics::Scheme::Detuned, headline);
  rep.rows.push_back(detail::absolute("detuned F", 0.95, det.fidelity, 0.01));
  rep.rows.push_back(detail::absolute("detuned P", 0.68, det.probability, 0.02));
  rep.rows.push_back(detail::unassertable("detuned transfer time", "s", std::nan(""), det.time,
                                          "t = pi delta / (2 G^2 - kappa^2 / 16); no value quoted"));
  const auto res = dynamics::evaluate_transfer(dynamics::Scheme::Resonant, headline);
  rep.rows.push_back(detail::absolute("resonant F", 0.926, res.fidelity, 0.003));
  rep.rows.push_back(detail::absolute("resonant P", 0.59, res.probability, 0.01));
  rep.rows.push_back(detail::unassertable("resonant transfer time", "s", std::nan(""), res.time,
                                          "t = 4 pi / sqrt(32 G^2 - kappa^2); no value quoted"));

  for (const auto& [scheme, name, t] : {std::tuple{dynamics::Scheme::Detuned, "detuned", det.time},
                                        std::tuple{dynamics::Scheme::Resonant, "resonant", res.time}}) {
    const auto peak = dynamics::locate_fidelity_maximum(scheme, headline, 0.5 * t, 1.5 * t);
    const double f_formula = scheme == dynamics::Scheme::Detuned ? det.fidelity : res.fidelity;
    char note[160];
    std::snprintf(note, sizeof note, "numeric F maximum %.6g at t = %.6g s; F at formula time %.6g", peak.fidelity,
                  peak.time, f_formula);
    rep.rows.push_back(detail::relative(std::string(name) + " formula time / F-maximum time", "", 1.0, t / peak.time,
                                        0.02, note));
  }

  rep.notes.push_back("transfer figures use G/2pi = 50 kHz, delta/2pi = 200 kHz, kappa/2pi = 75.2 kHz");
  rep.notes.push_back("polarizability along axis i is eps0 V s_i with prolate-spheroid depolarization factors");
  return rep;
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json rows = nlohmann::json::array();
  auto num = [](double v) -> nlohmann::json { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  for (const auto& r : rep.rows)
    rows.push_back({{"quantity", r.quantity},
                    {"unit", r.unit},
                    {"quoted", num(r.quoted)},
                    {"computed", num(r.computed)},
                    {"tolerance", r.tolerance},
                    {"status", to_string(r.status)},
                    {"note", r.note}});
  return {{"rows", rows}, {"notes", rep.notes}};
}

inline void print_text(const Report& rep, std::ostream& os) {
  char line[256];
  std::snprintf(line, sizeof line, "%-40s %-6s %14s %14s  %-18s %s\n", "quantity", "unit", "quoted", "computed",
                "tolerance", "status");
  os << line;
  for (const auto& r : rep.rows) {
    std::snprintf(line, sizeof line, "%-40s %-6s %14.6g %14.6g  %-18s %s\n", r.quantity.c_str(), r.unit.c_str(),
                  r.quoted, r.computed, r.tolerance.c_str(), to_string(r.status));
    os << line;
    if (!r.note.empty()) os << "    note: " << r.note << '\n';
  }
  for (const auto& n : rep.notes) os << "# " << n << '\n';
}

}  // namespace levi::claims
