#pragma once

#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "levi/error.hpp"
#include "levi/model.hpp"
#include "levi/physics.hpp"
#include "levi/sweep.hpp"
#include "levi/units.hpp"

// JSON ingestion. Every frequency in a file is cyclic (Hz) and angles are in
// degrees; they are converted to rad/s and radians here and nowhere else.
namespace levi::config {

using json = nlohmann::json;

enum class AxisConvention { SemiAxes, FullAxes };

struct DriveConfig {
  DriveTone tone1;
  DriveTone tone2;
  std::optional<double> delta;  // set when given as delta + sideband
  std::string sideband = "explicit";
};

struct Config {
  PhysicalSetup setup;
  AxisConvention axis_convention = AxisConvention::SemiAxes;
  std::optional<DriveConfig> drive;
  std::vector<sweep::SweepSpec> sweeps;
  std::vector<std::string> warnings;
};

namespace detail {

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw Error(ErrorKind::Parse, where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw Error(ErrorKind::Parse, "unknown key '" + key + "' in " + where);
  }
}

inline double number(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::Parse, "missing key '" + std::string(key) + "' in " + where);
  if (!it->is_number()) throw Error(ErrorKind::Parse, "key '" + std::string(key) + "' in " + where + " must be a number");
  return it->get<double>();
}

inline std::optional<double> optional_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, where, key);
}

inline std::string text(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw Error(ErrorKind::Parse, "key '" + std::string(key) + "' in " + where + " must be a string");
  return it->get<std::string>();
}

inline DriveConfig parse_drive(const json& j, const ModeFrequencies& freqs) {
  const std::string where = "drive";
  reject_unknown(j, where, {"rabi1_hz", "rabi2_hz", "detuning1_hz", "detuning2_hz", "delta_hz", "sideband"});
  DriveConfig d;
  d.tone1.rabi = units::to_angular(number(j, where, "rabi1_hz"));
  d.tone2.rabi = units::to_angular(number(j, where, "rabi2_hz"));
  const bool explicit_detunings = j.contains("detuning1_hz") || j.contains("detuning2_hz");
  if (explicit_detunings == j.contains("delta_hz"))
    throw Error(ErrorKind::Parse, "drive: give either detuning1_hz/detuning2_hz or delta_hz + sideband");
  if (explicit_detunings) {
    d.tone1.detuning = units::to_angular(number(j, where, "detuning1_hz"));
    d.tone2.detuning = units::to_angular(number(j, where, "detuning2_hz"));
  } else {
    const double delta = units::to_angular(number(j, where, "delta_hz"));
    d.delta = delta;
    d.sideband = j.contains("sideband") ? text(j, where, "sideband") : "beamsplitter";
    if (d.sideband == "beamsplitter") {  // Delta_j + omega_j = delta
      d.tone1.detuning = delta - freqs.omega_m;
      d.tone2.detuning = delta - freqs.omega_phi;
    } else if (d.sideband == "squeezer") {  // Delta_j - omega_j = delta
      d.tone1.detuning = delta + freqs.omega_m;
      d.tone2.detuning = delta + freqs.omega_phi;
    } else {
      throw Error(ErrorKind::Parse, "drive.sideband must be 'beamsplitter' or 'squeezer'");
    }
  }
  if (d.tone1.rabi < 0.0 || d.tone2.rabi < 0.0)
    throw ValidationError(std::vector<Violation>{{"drive.rabi", "Rabi frequencies must be >= 0"}});
  return d;
}

inline sweep::Axis parse_axis(const json& j, const std::string& where) {
  reject_unknown(j, where, {"param", "min_hz", "max_hz", "count"});
  sweep::Axis axis;
  const auto name = text(j, where, "param");
  const auto p = sweep::param_from_string(name);
  if (!p) throw Error(ErrorKind::Parse, where + ".param must be G, delta or kappa (got '" + name + "')");
  axis.param = *p;
  axis.min = units::to_angular(number(j, where, "min_hz"));
  axis.max = units::to_angular(number(j, where, "max_hz"));
  if (j.contains("count")) {
    if (!j["count"].is_number_integer()) throw Error(ErrorKind::Parse, where + ".count must be an integer");
    axis.count = j["count"].get<int>();
  }
  return axis;
}

inline sweep::SweepSpec parse_sweep(const json& j, std::size_t index, double default_kappa) {
  const std::string where = "sweeps[" + std::to_string(index) + "]";
  reject_unknown(j, where, {"name", "scheme", "axis1", "axis2", "fixed_hz", "evaluate_at"});
  sweep::SweepSpec spec;
  spec.name = j.contains("name") ? text(j, where, "name") : "sweep" + std::to_string(index);
  const auto scheme_name = text(j, where, "scheme");
  const auto scheme = dynamics::scheme_from_string(scheme_name);
  if (!scheme) throw Error(ErrorKind::Parse, where + ".scheme unknown: '" + scheme_name + "'");
  spec.scheme = *scheme;
  if (!j.contains("axis1") || !j.contains("axis2")) throw Error(ErrorKind::Parse, where + " needs axis1 and axis2");
  spec.axis1 = parse_axis(j["axis1"], where + ".axis1");
  spec.axis2 = parse_axis(j["axis2"], where + ".axis2");

  spec.fixed.kappa = default_kappa;
  bool have_g = false;
  bool have_delta = false;
  if (j.contains("fixed_hz")) {
    const auto& f = j["fixed_hz"];
    reject_unknown(f, where + ".fixed_hz", {"G", "delta", "kappa"});
    if (auto v = optional_number(f, where + ".fixed_hz", "G")) spec.fixed.G = units::to_angular(*v), have_g = true;
    if (auto v = optional_number(f, where + ".fixed_hz", "delta"))
      spec.fixed.delta = units::to_angular(*v), have_delta = true;
    if (auto v = optional_number(f, where + ".fixed_hz", "kappa")) spec.fixed.kappa = units::to_angular(*v);
  }
  auto covered = [&](sweep::SweepParam p) { return spec.axis1.param == p || spec.axis2.param == p; };
  if (!covered(sweep::SweepParam::G) && !have_g) throw Error(ErrorKind::Spec, where + ": fixed_hz.G required");
  if (spec.scheme == dynamics::Scheme::Detuned && !covered(sweep::SweepParam::Delta) && !have_delta)
    throw Error(ErrorKind::Spec, where + ": fixed_hz.delta required for a detuned sweep");

  if (j.contains("evaluate_at")) {
    const auto mode = text(j, where, "evaluate_at");
    if (mode == "formula")
      spec.evaluate_at = sweep::EvaluateAt::Formula;
    else if (mode == "numeric-maximum")
      spec.evaluate_at = sweep::EvaluateAt::NumericMaximum;
    else
      throw Error(ErrorKind::Parse, where + ".evaluate_at must be 'formula' or 'numeric-maximum'");
  }
  sweep::validate_spec(spec);
  return spec;
}

}  // namespace detail

inline Config parse_config(const std::string& text_in) {
  json j;
  try {
    j = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  using detail::number;
  detail::reject_unknown(j, "top level",
                         {"density", "semi_axis_long", "semi_axis_short", "rel_permittivity", "cavity_length",
                          "wavelength", "finesse", "pose", "freqs_hz", "axis_convention", "drive", "sweeps"});
  Config cfg;
  if (j.contains("axis_convention")) {
    const auto conv = detail::text(j, "top level", "axis_convention");
    if (conv == "semi")
      cfg.axis_convention = AxisConvention::SemiAxes;
    else if (conv == "full")
      cfg.axis_convention = AxisConvention::FullAxes;
    else
      throw Error(ErrorKind::Parse, "axis_convention must be 'semi' or 'full'");
  }
  const double axis_scale = cfg.axis_convention == AxisConvention::FullAxes ? 0.5 : 1.0;

  auto& s = cfg.setup;
  s.particle.density = number(j, "top level", "density");
  s.particle.semi_axis_long = axis_scale * number(j, "top level", "semi_axis_long");
  s.particle.semi_axis_short = axis_scale * number(j, "top level", "semi_axis_short");
  s.particle.rel_permittivity = number(j, "top level", "rel_permittivity");
  s.cavity = CavitySpec::make(number(j, "top level", "cavity_length"), number(j, "top level", "wavelength"),
                              number(j, "top level", "finesse"));

  if (!j.contains("pose")) throw Error(ErrorKind::Parse, "missing key 'pose'");
  const auto& pose = j["pose"];
  detail::reject_unknown(pose, "pose", {"x", "y", "z", "phi_deg"});
  s.pose = ParticlePose::make(number(pose, "pose", "x"), number(pose, "pose", "y"), number(pose, "pose", "z"),
                              units::degrees_to_radians(number(pose, "pose", "phi_deg")));

  if (!j.contains("freqs_hz")) throw Error(ErrorKind::Parse, "missing key 'freqs_hz'");
  const auto& fr = j["freqs_hz"];
  detail::reject_unknown(fr, "freqs_hz", {"omega_m", "omega_phi"});
  s.freqs.omega_m = units::to_angular(number(fr, "freqs_hz", "omega_m"));
  s.freqs.omega_phi = units::to_angular(number(fr, "freqs_hz", "omega_phi"));
  if (s.cavity.wavelength > 0.0) s.freqs.omega_cav = units::two_pi * units::speed_of_light / s.cavity.wavelength;

  auto report = check_setup(s);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
  cfg.warnings = std::move(report.warnings);

  if (j.contains("drive")) cfg.drive = detail::parse_drive(j["drive"], s.freqs);
  if (j.contains("sweeps")) {
    if (!j["sweeps"].is_array()) throw Error(ErrorKind::Parse, "'sweeps' must be an array");
    const double kappa = physics::cavity_linewidth(s.cavity);
    for (std::size_t i = 0; i < j["sweeps"].size(); ++i)
      cfg.sweeps.push_back(detail::parse_sweep(j["sweeps"][i], i, kappa));
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace levi::config
