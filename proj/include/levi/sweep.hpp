#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "levi/dynamics.hpp"
#include "levi/error.hpp"
#include "levi/units.hpp"

namespace levi::sweep {

enum class SweepParam { G, Delta, Kappa };

constexpr std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::G: return "G";
    case SweepParam::Delta: return "delta";
    case SweepParam::Kappa: return "kappa";
  }
  return "unknown";
}

inline std::optional<SweepParam> param_from_string(std::string_view s) {
  if (s == "G") return SweepParam::G;
  if (s == "delta") return SweepParam::Delta;
  if (s == "kappa") return SweepParam::Kappa;
  return std::nullopt;
}

/// Linear axis; min/max in rad/s.
struct Axis {
  SweepParam param = SweepParam::G;
  double min = 0.0;
  double max = 0.0;
  int count = 64;

  double value(int k) const { return min + (max - min) * static_cast<double>(k) / static_cast<double>(count - 1); }
};

enum class EvaluateAt { Formula, NumericMaximum };

struct SweepSpec {
  std::string name;
  dynamics::Scheme scheme = dynamics::Scheme::Detuned;
  Axis axis1;
  Axis axis2;
  dynamics::SchemeParams fixed;  // supplies the parameter no axis covers
  EvaluateAt evaluate_at = EvaluateAt::Formula;
};

struct SweepRecord {
  double param1 = 0.0;
  double param2 = 0.0;
  double time = std::numeric_limits<double>::quiet_NaN();
  double fidelity = std::numeric_limits<double>::quiet_NaN();
  double probability = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

/// Row-major: axis1 is the outer index.
struct SweepResult {
  int count1 = 0;
  int count2 = 0;
  std::vector<SweepRecord> records;

  const SweepRecord& at(int i, int j) const { return records[static_cast<std::size_t>(i * count2 + j)]; }
};

inline void validate_spec(const SweepSpec& spec) {
  if (spec.scheme != dynamics::Scheme::Detuned && spec.scheme != dynamics::Scheme::Resonant)
    throw Error(ErrorKind::Spec, "sweep scheme must be detuned or resonant");
  for (const Axis* axis : {&spec.axis1, &spec.axis2}) {
    if (axis->count < 2) throw Error(ErrorKind::Spec, "axis count must be >= 2");
    if (!std::isfinite(axis->min) || !std::isfinite(axis->max))
      throw Error(ErrorKind::Spec, "axis bounds must be finite");
  }
  if (spec.axis1.param == spec.axis2.param) throw Error(ErrorKind::Spec, "sweep axes must name distinct parameters");
}

namespace detail {
inline void assign(dynamics::SchemeParams& q, SweepParam p, double v) {
  switch (p) {
    case SweepParam::G: q.G = v; break;
    case SweepParam::Delta: q.delta = v; break;
    case SweepParam::Kappa: q.kappa = v; break;
  }
}
}  // namespace detail

/// One grid cell. Failed preconditions become a status string with NaN values.
/// The numeric mode searches for the F maximum within +-50% of the formula time.
inline SweepRecord evaluate_cell(const SweepSpec& spec, double v1, double v2) {
  SweepRecord rec;
  rec.param1 = v1;
  rec.param2 = v2;
  dynamics::SchemeParams q = spec.fixed;
  detail::assign(q, spec.axis1.param, v1);
  detail::assign(q, spec.axis2.param, v2);
  try {
    double t = dynamics::transfer_time(spec.scheme, q);
    if (spec.evaluate_at == EvaluateAt::NumericMaximum)
      t = dynamics::locate_fidelity_maximum(spec.scheme, q, 0.5 * t, 1.5 * t, 801).time;
    const auto [f, p] = dynamics::fidelity_and_probability(dynamics::amplitudes(spec.scheme, t, q));
    if (!std::isfinite(f) || !std::isfinite(p)) {
      rec.status = "non-finite";
      return rec;
    }
    rec.time = t;
    rec.fidelity = f;
    rec.probability = p;
  } catch (const Error& e) {
    rec.status = std::string(to_string(e.kind()));
    rec.time = rec.fidelity = rec.probability = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

/// LEVI_THREADS if set and positive, else the hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("LEVI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Cells are evaluated concurrently into preallocated slots; output is independent
/// of the thread count and of scheduling.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  validate_spec(spec);
  if (threads == 0) threads = default_thread_count();
  SweepResult result;
  result.count1 = spec.axis1.count;
  result.count2 = spec.axis2.count;
  const std::size_t cells = static_cast<std::size_t>(result.count1) * static_cast<std::size_t>(result.count2);
  result.records.resize(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const int i = static_cast<int>(cell / static_cast<std::size_t>(result.count2));
      const int j = static_cast<int>(cell % static_cast<std::size_t>(result.count2));
      result.records[cell] = evaluate_cell(spec, spec.axis1.value(i), spec.axis2.value(j));
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  std::vector<std::thread> pool;
  pool.reserve(n > 0 ? n - 1 : 0);
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

/// 12 significant digits, C locale, NaN spelled "nan".
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Columns param1, param2, t, F, P, status. Axis values are written in Hz (cyclic).
inline void write_csv(const SweepResult& result, std::ostream& os) {
  os << "param1,param2,t,F,P,status\n";
  for (const auto& r : result.records) {
    os << format_number(units::from_angular(r.param1)) << ',' << format_number(units::from_angular(r.param2)) << ','
       << format_number(r.time) << ',' << format_number(r.fidelity) << ',' << format_number(r.probability) << ','
       << r.status << '\n';
  }
}

}  // namespace levi::sweep
