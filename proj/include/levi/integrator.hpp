#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "levi/dynamics.hpp"
#include "levi/error.hpp"
#include "levi/model.hpp"

// Numerical reference for the closed forms: dense generators and two independent
// propagators (matrix exponential and embedded Runge-Kutta).
namespace levi::integrator {

/// Dense -i H (hbar = 1), so that d psi / dt = entries * psi.
struct GeneratorMatrix {
  Eigen::MatrixXcd entries;
  std::vector<std::string> basis_labels;

  Eigen::Index dim() const { return entries.rows(); }
  Eigen::MatrixXcd hamiltonian() const { return cplx(0.0, 1.0) * entries; }
};

inline GeneratorMatrix from_hamiltonian(const Eigen::MatrixXcd& h, std::vector<std::string> labels) {
  return {cplx(0.0, -1.0) * h, std::move(labels)};
}

/// No-jump generator over (|0,01>, |0,10>, |1,00>).
///
/// The detuned Hamiltonian carries explicit e^{+-i delta t} factors. Writing
/// C_100 = e^{-i delta t} D_100 removes them and leaves -delta on the photon
/// diagonal; the propagated D_100 therefore differs from the closed-form C_100 by
/// that phase (see to_closed_form_frame).
inline GeneratorMatrix build_subspace_generator(dynamics::Scheme scheme, double G, double delta, double kappa) {
  if (scheme != dynamics::Scheme::Detuned && scheme != dynamics::Scheme::Resonant)
    throw Error(ErrorKind::Spec, "subspace generator exists for the detuned and resonant schemes only");
  if (scheme == dynamics::Scheme::Resonant) delta = 0.0;
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 2) = h(2, 0) = G;
  h(1, 2) = h(2, 1) = G;
  h(2, 2) = cplx(-delta, -0.5 * kappa);
  return from_hamiltonian(h, {"|0,01>", "|0,10>", "|1,00>"});
}

inline SubspaceState to_closed_form_frame(const Eigen::VectorXcd& v, double delta, double t) {
  return {v(0), v(1), v(2) * std::exp(cplx(0.0, -delta * t))};
}

enum class Method { Automatic, Exponential, DormandPrince };

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  double max_local_error = 0.0;
};

struct PropagationResult {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  StepStats step_stats;
};

namespace detail {

inline PropagationResult propagate_exponential(const GeneratorMatrix& gen, const Eigen::VectorXcd& initial,
                                               const std::vector<double>& t_grid) {
  PropagationResult out;
  out.times = t_grid;
  out.states.reserve(t_grid.size());
  out.states.push_back(initial);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const Eigen::MatrixXcd step = (gen.entries * (t_grid[k] - t_grid[0])).exp();
    out.states.push_back(step * initial);
    ++out.step_stats.accepted;
  }
  return out;
}

inline PropagationResult propagate_dopri(const GeneratorMatrix& gen, const Eigen::VectorXcd& initial,
                                         const std::vector<double>& t_grid, double tol) {
  using State = std::vector<cplx>;
  namespace odeint = boost::numeric::odeint;
  const auto n = static_cast<std::size_t>(gen.dim());

  auto rhs = [&](const State& x, State& dxdt, double) {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), gen.dim());
    Eigen::Map<Eigen::VectorXcd> dv(dxdt.data(), gen.dim());
    dv.noalias() = gen.entries * xv;
  };

  odeint::runge_kutta_dopri5<State> stepper;
  PropagationResult out;
  out.times = t_grid;
  out.states.reserve(t_grid.size());
  out.states.push_back(initial);

  State x(initial.data(), initial.data() + n);
  State dxdt(n), x_new(n), dxdt_new(n), err(n);
  rhs(x, dxdt, t_grid[0]);

  const double rate = std::max(gen.entries.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  double dt = 0.1 / rate;
  double t = t_grid[0];

  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double target = t_grid[k];
    while (t < target) {
      const bool last = t + dt >= target;
      const double h = last ? target - t : dt;
      stepper.do_step(rhs, x, dxdt, t, x_new, dxdt_new, h, err);
      double ratio = 0.0;
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double scale = tol * (1.0 + std::max(std::abs(x[i]), std::abs(x_new[i])));
        ratio = std::max(ratio, std::abs(err[i]) / scale);
        worst = std::max(worst, std::abs(err[i]));
      }
      if (ratio <= 1.0) {
        t = last ? target : t + h;
        x.swap(x_new);
        dxdt.swap(dxdt_new);
        ++out.step_stats.accepted;
        out.step_stats.max_local_error = std::max(out.step_stats.max_local_error, worst);
        const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        // a clipped final step says nothing about the natural step size
        if (!last || h >= dt) dt = h * std::clamp(grow, 0.2, 5.0);
      } else {
        ++out.step_stats.rejected;
        dt = h * std::clamp(0.9 * std::pow(ratio, -0.25), 0.1, 0.9);
        if (dt < 1e-14 * std::max(std::abs(t), 1.0 / rate))
          throw Error(ErrorKind::StepFailure, "adaptive step size underflow");
      }
    }
    out.states.emplace_back(Eigen::Map<const Eigen::VectorXcd>(x.data(), gen.dim()));
  }
  return out;
}

}  // namespace detail

/// Solves d psi / dt = gen psi and samples at t_grid (t_grid[0] is the initial time).
/// Automatic picks the matrix exponential for dim <= 64 and Dormand-Prince above.
inline PropagationResult propagate(const GeneratorMatrix& gen, const Eigen::VectorXcd& initial,
                                   const std::vector<double>& t_grid, double tol = 1e-12,
                                   Method method = Method::Automatic) {
  if (initial.size() != gen.dim()) throw Error(ErrorKind::Spec, "initial state dimension mismatch");
  if (std::abs(initial.norm() - 1.0) > 1e-9) throw Error(ErrorKind::NotNormalized, "initial state not normalized");
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw Error(ErrorKind::Spec, "tolerance must lie in [1e-13, 1e-6]");
  if (t_grid.empty()) throw Error(ErrorKind::Spec, "empty time grid");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw Error(ErrorKind::Spec, "time grid must be sorted");
  if (method == Method::Automatic) method = gen.dim() <= 64 ? Method::Exponential : Method::DormandPrince;
  return method == Method::Exponential ? detail::propagate_exponential(gen, initial, t_grid)
                                       : detail::propagate_dopri(gen, initial, t_grid, tol);
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Truncated Fock models

enum class FockModelKind { LinearizedThreeMode, Beamsplitter, Squeezer };

/// How a mechanical mode talks to the cavity in the three-mode model:
/// Exchange a^dag b + a b^dag, Pair a^dag b^dag + a b.
enum class Coupling { Exchange, Pair };

struct FockModelSpec {
  FockModelKind kind = FockModelKind::LinearizedThreeMode;
  // three-mode (a, b, c)
  double g_b = 0.0;
  double g_c = 0.0;
  double delta = 0.0;  // enters as -delta a^dag a, matching the subspace generator
  double kappa = 0.0;
  Coupling b_coupling = Coupling::Exchange;
  Coupling c_coupling = Coupling::Exchange;
  // two-mode (b, c)
  double G1 = 0.0;
  double G2 = 0.0;  // beam-splitter only; the squeezer shifts both modes by G1
  double G3 = 0.0;
};

inline constexpr std::size_t max_fock_dimension = 4096;

inline Eigen::MatrixXcd lowering_operator(const std::vector<int>& cutoffs, std::size_t mode) {
  const FockState shape{cutoffs, {}};
  const auto dim = static_cast<Eigen::Index>(FockState::dimension(cutoffs));
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    auto occ = shape.occupations(static_cast<std::size_t>(col));
    const int n = occ[mode];
    if (n == 0) continue;
    occ[mode] = n - 1;
    op(static_cast<Eigen::Index>(shape.index(occ)), col) = std::sqrt(static_cast<double>(n));
  }
  return op;
}

inline std::vector<std::string> fock_labels(const std::vector<int>& cutoffs) {
  const FockState shape{cutoffs, {}};
  std::vector<std::string> labels;
  const auto dim = FockState::dimension(cutoffs);
  labels.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string s = "|";
    const auto occ = shape.occupations(i);
    for (std::size_t k = 0; k < occ.size(); ++k) s += (k ? "," : "") + std::to_string(occ[k]);
    labels.push_back(s + ">");
  }
  return labels;
}

/// Mode order is (a, b, c) for the three-mode model and (b, c) for the others.
inline GeneratorMatrix build_fock_model(const FockModelSpec& spec, const std::vector<int>& cutoffs) {
  const std::size_t modes = spec.kind == FockModelKind::LinearizedThreeMode ? 3 : 2;
  if (cutoffs.size() != modes)
    throw Error(ErrorKind::Spec, "expected " + std::to_string(modes) + " cutoffs for this model");
  for (int c : cutoffs)
    if (c < 1) throw Error(ErrorKind::Spec, "every Fock cutoff must be >= 1");
  if (FockState::dimension(cutoffs) > max_fock_dimension)
    throw Error(ErrorKind::DimensionTooLarge, "truncated Fock space exceeds 4096 states");

  auto adj = [](const Eigen::MatrixXcd& m) -> Eigen::MatrixXcd { return m.adjoint(); };
  Eigen::MatrixXcd h;
  if (spec.kind == FockModelKind::LinearizedThreeMode) {
    const auto a = lowering_operator(cutoffs, 0);
    const auto b = lowering_operator(cutoffs, 1);
    const auto c = lowering_operator(cutoffs, 2);
    auto link = [&](const Eigen::MatrixXcd& m, Coupling kind) -> Eigen::MatrixXcd {
      const Eigen::MatrixXcd raise_a_term = kind == Coupling::Exchange ? Eigen::MatrixXcd(adj(a) * m)
                                                                       : Eigen::MatrixXcd(adj(a) * adj(m));
      return raise_a_term + adj(raise_a_term);
    };
    h = cplx(-spec.delta, -0.5 * spec.kappa) * (adj(a) * a) + spec.g_b * link(b, spec.b_coupling) +
        spec.g_c * link(c, spec.c_coupling);
  } else {
    const auto b = lowering_operator(cutoffs, 0);
    const auto c = lowering_operator(cutoffs, 1);
    if (spec.kind == FockModelKind::Beamsplitter) {
      h = spec.G1 * (adj(b) * b) + spec.G2 * (adj(c) * c) + spec.G3 * (adj(b) * c + b * adj(c));
    } else {
      h = spec.G1 * (adj(b) * b + adj(c) * c) + spec.G3 * (adj(b) * adj(c) + b * c);
    }
  }
  return from_hamiltonian(h, fock_labels(cutoffs));
}

inline FockState fock_basis_state(const std::vector<int>& cutoffs, const std::vector<int>& occupations) {
  FockState s{cutoffs, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(FockState::dimension(cutoffs)))};
  s.amplitudes(static_cast<Eigen::Index>(s.index(occupations))) = 1.0;
  return s;
}

/// Modes listed in neither side are traced out.
struct Bipartition {
  std::vector<int> side_a;
  std::vector<int> side_b;
};

/// E_N = log2 || rho^{T_B} ||_1 of the (reduced) density operator of a pure state.
inline double logarithmic_negativity(const FockState& state, const Bipartition& part) {
  if (static_cast<std::size_t>(state.amplitudes.size()) != FockState::dimension(state.cutoffs))
    throw Error(ErrorKind::Spec, "amplitude vector does not match cutoffs");
  if (std::abs(state.amplitudes.squaredNorm() - 1.0) > 1e-9)
    throw Error(ErrorKind::NotNormalized, "logarithmic negativity needs a normalized pure state");

  const auto modes = state.cutoffs.size();
  std::vector<int> role(modes, 2);  // 0: A, 1: B, 2: traced
  for (int m : part.side_a) role.at(static_cast<std::size_t>(m)) = 0;
  for (int m : part.side_b) {
    if (role.at(static_cast<std::size_t>(m)) == 0) throw Error(ErrorKind::Spec, "mode on both sides of partition");
    role[static_cast<std::size_t>(m)] = 1;
  }

  std::array<std::size_t, 3> dims{1, 1, 1};
  for (std::size_t k = 0; k < modes; ++k) dims[role[k]] *= static_cast<std::size_t>(state.cutoffs[k] + 1);

  // Coefficient tensor psi[t](a, b).
  std::vector<Eigen::MatrixXcd> slices(dims[2], Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dims[0]),
                                                                        static_cast<Eigen::Index>(dims[1])));
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    const auto occ = state.occupations(static_cast<std::size_t>(i));
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (std::size_t k = 0; k < modes; ++k)
      idx[role[k]] = idx[role[k]] * static_cast<std::size_t>(state.cutoffs[k] + 1) + static_cast<std::size_t>(occ[k]);
    slices[idx[2]](static_cast<Eigen::Index>(idx[0]), static_cast<Eigen::Index>(idx[1])) = state.amplitudes(i);
  }

  const auto da = static_cast<Eigen::Index>(dims[0]);
  const auto db = static_cast<Eigen::Index>(dims[1]);
  Eigen::MatrixXcd pt = Eigen::MatrixXcd::Zero(da * db, da * db);
  // rho^{T_B}[(a,b),(a',b')] = sum_t psi_t(a,b') conj(psi_t(a',b))
  for (const auto& m : slices)
    for (Eigen::Index a = 0; a < da; ++a)
      for (Eigen::Index b = 0; b < db; ++b)
        for (Eigen::Index a2 = 0; a2 < da; ++a2)
          for (Eigen::Index b2 = 0; b2 < db; ++b2)
            pt(a * db + b, a2 * db + b2) += m(a, b2) * std::conj(m(a2, b));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

struct EffectiveCouplingFit {
  double rate = 0.0;
  double residual = 0.0;  // RMS misfit over the fitted lobe
  std::string warning;
};

/// Fits |psi_target(t)|^2 to sin^2(rate t) on the first transfer lobe.
/// detuning_ratio is delta / G of the model that produced the result.
inline EffectiveCouplingFit extract_effective_coupling(const PropagationResult& result, std::size_t target,
                                                       double detuning_ratio) {
  EffectiveCouplingFit fit;
  if (detuning_ratio < 10.0) fit.warning = "delta / G below 10: cavity elimination is not adiabatic";

  const auto n = result.states.size();
  std::vector<double> pop(n);
  for (std::size_t k = 0; k < n; ++k) pop[k] = std::norm(result.states[k](static_cast<Eigen::Index>(target)));

  std::size_t first = n;
  for (std::size_t k = 0; k < n; ++k)
    if (pop[k] > 0.5) {
      first = k;
      break;
    }
  if (first == n) throw Error(ErrorKind::FitDiverged, "target population never exceeds 1/2: no transfer lobe");
  std::size_t peak = first;
  for (std::size_t k = first; k < n && pop[k] > 0.5; ++k)
    if (pop[k] > pop[peak]) peak = k;

  const double t0 = result.times.front();
  const double t_peak = result.times[peak] - t0;
  if (!(t_peak > 0.0)) throw Error(ErrorKind::FitDiverged, "transfer peak at the initial time");
  const double guess = units::pi / (2.0 * t_peak);

  auto rms = [&](double rate) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = result.times[k] - t0;
      if (t > 2.0 * t_peak) break;
      const double s = std::sin(rate * t);
      sum += (pop[k] - s * s) * (pop[k] - s * s);
      ++used;
    }
    return std::sqrt(sum / static_cast<double>(used));
  };

  double lo = 0.7 * guess;
  double hi = 1.3 * guess;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = rms(x1);
  double f2 = rms(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * guess; ++it) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = rms(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = rms(x1);
    }
  }
  fit.rate = 0.5 * (lo + hi);
  fit.residual = rms(fit.rate);
  if (fit.residual > 0.05) throw Error(ErrorKind::FitDiverged, "sin^2 fit residual above 0.05");
  return fit;
}

}  // namespace levi::integrator
