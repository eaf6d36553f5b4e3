// levi: parameter derivation, transfer dynamics and sweeps for a cavity-coupled
// levitated nanoparticle. Exit codes: 0 ok, 1 input error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "levi/levi.hpp"

namespace {

int run_derive(const std::string& path, bool as_json, bool balance) {
  const auto cfg = levi::config::load_config(path);
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
  levi::config::DriveConfig drive;
  if (cfg.drive) drive = *cfg.drive;
  if (balance) {
    if (!cfg.drive) throw levi::Error(levi::ErrorKind::Spec, "--balance needs a drive block");
    drive.tone2.rabi = levi::physics::balance_second_rabi(cfg.setup, drive.tone1, drive.tone2);
  }
  const auto d = levi::physics::derive(cfg.setup, drive.tone1, drive.tone2);
  if (d.squeezer && !d.squeezer->warning.empty()) std::cerr << "warning: " << d.squeezer->warning << '\n';
  if (as_json)
    std::cout << levi::report::derivation_json(d).dump(2) << '\n';
  else
    levi::report::print_derivation(d, std::cout);
  return 0;
}

struct EvolveOptions {
  std::string scheme = "detuned";
  double g_khz = 50.0;
  double delta_khz = 200.0;
  double kappa_khz = 75.2;
  double g1_khz = 0.0;
  double t_end = -1.0;
  int steps = 200;
};

int run_evolve(const EvolveOptions& o) {
  using levi::sweep::format_number;
  const auto scheme = levi::dynamics::scheme_from_string(o.scheme);
  if (!scheme) throw levi::Error(levi::ErrorKind::Spec, "unknown scheme '" + o.scheme + "'");
  if (o.steps < 1) throw levi::Error(levi::ErrorKind::Spec, "--steps must be >= 1");
  const levi::dynamics::SchemeParams q{levi::units::khz(o.g_khz), levi::units::khz(o.delta_khz),
                                       levi::units::khz(o.kappa_khz), levi::units::khz(o.g1_khz)};
  const double t_end = o.t_end > 0.0 ? o.t_end : 2.0 * levi::dynamics::transfer_time(*scheme, q);

  std::cout << "t,re_c001,im_c001,re_c010,im_c010,re_c100,im_c100,P,F\n";
  for (int k = 0; k <= o.steps; ++k) {
    const double t = t_end * k / o.steps;
    const auto s = levi::dynamics::amplitudes(*scheme, t, q);
    const double p = s.norm2();
    const double f = p > 1e-300 ? std::abs(s.c010) / std::sqrt(p) : std::nan("");
    std::cout << format_number(t) << ',' << format_number(s.c001.real()) << ',' << format_number(s.c001.imag()) << ','
              << format_number(s.c010.real()) << ',' << format_number(s.c010.imag()) << ','
              << format_number(s.c100.real()) << ',' << format_number(s.c100.imag()) << ',' << format_number(p)
              << ',' << format_number(f) << '\n';
  }
  return 0;
}

int run_sweep(const std::string& path, const std::string& out, const std::string& name, unsigned threads) {
  const auto cfg = levi::config::load_config(path);
  if (cfg.sweeps.empty()) throw levi::Error(levi::ErrorKind::Spec, "config has no sweeps block");
  const levi::sweep::SweepSpec* spec = &cfg.sweeps.front();
  if (!name.empty()) {
    spec = nullptr;
    for (const auto& s : cfg.sweeps)
      if (s.name == name) spec = &s;
    if (!spec) throw levi::Error(levi::ErrorKind::Spec, "no sweep named '" + name + "'");
  }
  const auto result = levi::sweep::run_sweep(*spec, threads);
  if (out.empty() || out == "-") {
    levi::sweep::write_csv(result, std::cout);
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw levi::Error(levi::ErrorKind::Spec, "cannot write '" + out + "'");
    levi::sweep::write_csv(result, os);
  }
  return 0;
}

int run_oracle(std::size_t count, std::uint64_t seed, double tol) {
  const auto summary = levi::oracle::run(count, seed);
  std::cout << "comparisons: " << summary.comparisons.size() << '\n'
            << "max amplitude deviation: " << levi::sweep::format_number(summary.max_deviation) << '\n'
            << (summary.passed(tol) ? "PASS" : "FAIL") << " (tolerance " << tol << ")\n";
  return summary.passed(tol) ? 0 : 1;
}

int run_claims(const std::string& path, bool as_json) {
  const auto cfg = levi::config::load_config(path);
  const auto rep = levi::claims::claims_report(cfg);
  if (as_json)
    std::cout << levi::claims::to_json(rep).dump(2) << '\n';
  else
    levi::claims::print_text(rep, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levi: librational/translational state transfer through a cavity"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  bool balance = false;
  auto* derive = app.add_subcommand("derive", "derive couplings and effective rates from a config");
  derive->add_option("config", config_path, "JSON config")->required();
  derive->add_flag("--json", as_json, "emit JSON");
  derive->add_flag("--balance", balance, "tune the second Rabi frequency so that G1 = G2");

  EvolveOptions ev;
  auto* evolve = app.add_subcommand("evolve", "closed-form amplitudes on a time grid (CSV)");
  evolve->add_option("--scheme", ev.scheme, "ideal | detuned | resonant | beamsplitter")
      ->check(CLI::IsMember({"ideal", "detuned", "resonant", "beamsplitter"}));
  evolve->add_option("--g-khz", ev.g_khz, "G/2pi in kHz (G3 for beamsplitter)");
  evolve->add_option("--delta-khz", ev.delta_khz, "delta/2pi in kHz");
  evolve->add_option("--kappa-khz", ev.kappa_khz, "kappa/2pi in kHz");
  evolve->add_option("--g1-khz", ev.g1_khz, "G1/2pi in kHz (beamsplitter only)");
  evolve->add_option("--t-end", ev.t_end, "end time in seconds (default: twice the transfer time)");
  evolve->add_option("--steps", ev.steps, "number of intervals");

  std::string out_path;
  std::string sweep_name;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "fidelity/probability grid (CSV)");
  sweep->add_option("config", config_path, "JSON config with a sweeps block")->required();
  sweep->add_option("--out", out_path, "output CSV path ('-' for stdout)");
  sweep->add_option("--name", sweep_name, "sweep to run (default: first)");
  sweep->add_option("--threads", threads, "worker threads (default: LEVI_THREADS or hardware)");

  std::size_t oracle_count = 100;
  std::uint64_t seed = levi::oracle::default_seed;
  double oracle_tol = 1e-8;
  auto* oracle = app.add_subcommand("oracle", "closed forms versus numerical propagation");
  oracle->add_option("--count", oracle_count, "random parameter tuples");
  oracle->add_option("--seed", seed, "random seed");
  oracle->add_option("--tol", oracle_tol, "max allowed amplitude deviation");

  auto* claims = app.add_subcommand("claims", "quoted numbers next to computed ones");
  claims->add_option("config", config_path, "JSON config")->required();
  claims->add_flag("--json", as_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*derive) return run_derive(config_path, as_json, balance);
    if (*evolve) return run_evolve(ev);
    if (*sweep) return run_sweep(config_path, out_path, sweep_name, threads);
    if (*oracle) return run_oracle(oracle_count, seed, oracle_tol);
    if (*claims) return run_claims(config_path, as_json);
  } catch (const levi::ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << "error: " << v.field << ": " << v.reason << '\n';
    return 1;
  } catch (const levi::Error& e) {
    std::cerr << "error (" << levi::to_string(e.kind()) << "): " << e.what() << '\n';
    return levi::is_input_error(e.kind()) ? 1 : 2;
  }
  return 1;
}
