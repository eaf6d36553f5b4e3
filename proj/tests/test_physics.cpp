#include <gtest/gtest.h>

#include <cmath>

#include "levi/physics.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace levi;
using namespace levi::physics;
using fixtures::reference_setup;

// Frozen from an independent evaluation of the closed formulas (CODATA 2018 constants).
constexpr double kMass = 4.581489286485115e-19;
constexpr double kMoment = 2.863430804053196e-34;
constexpr double kS1 = 2.5884609440905737;
constexpr double kS2 = 1.597485025189715;
constexpr double kGab = 0.30538473849429565;  // rad/s
constexpr double kGac = 0.21877313256589087;  // rad/s

TEST(MassAndInertia, ReferenceParticle) {
  const auto s = reference_setup();
  const auto in = mass_and_inertia(s.particle);
  EXPECT_NEAR(in.mass, kMass, 1e-13 * kMass);
  EXPECT_NEAR(in.moment, kMoment, 1e-13 * kMoment);
  const double sliced = s.particle.density * oracles::ellipsoid_volume_by_slices(50e-9, 25e-9);
  EXPECT_NEAR(in.mass, sliced, 1e-10 * sliced);
}

TEST(MassAndInertia, SphereAndLinearity) {
  ParticleSpec sphere{2000.0, 40e-9, 40e-9, 3.0};
  const auto in = mass_and_inertia(sphere);
  EXPECT_NEAR(in.moment, 0.4 * in.mass * 40e-9 * 40e-9, 1e-14 * in.moment);
  auto heavy = sphere;
  heavy.density *= 2.0;
  const auto in2 = mass_and_inertia(heavy);
  EXPECT_DOUBLE_EQ(in2.mass, 2.0 * in.mass);
  EXPECT_DOUBLE_EQ(in2.moment, 2.0 * in.moment);
}

TEST(Susceptibility, SphereIsClausiusMossotti) {
  const ParticleSpec sphere{2000.0, 40e-9, 40e-9, 5.7};
  const auto s = susceptibility(sphere);
  const double cm = 3.0 * (5.7 - 1.0) / (5.7 + 2.0);
  EXPECT_NEAR(s.s1, cm, 1e-14);
  EXPECT_NEAR(s.s2, cm, 1e-14);
}

TEST(Susceptibility, NearSphereSeriesMatchesClosedForm) {
  // either side of the series/closed-form switch
  for (double ratio : {0.9987, 0.99875, 0.9988}) {
    const ParticleSpec p{1.0, 1.0, ratio, 4.0};
    const auto n = depolarization_factors(p);
    const double n_quad = oracles::depolarization_by_quadrature(1.0, ratio, 1.0);
    EXPECT_NEAR(n[0], n_quad, 1e-9) << ratio;
  }
}

TEST(Susceptibility, VacuumLimit) {
  const ParticleSpec p{1.0, 50e-9, 25e-9, 1.0 + 1e-9};
  const auto s = susceptibility(p);
  EXPECT_LT(s.s1, 1e-8);
  EXPECT_LT(s.s2, 1e-8);
  EXPECT_THROW(susceptibility(ParticleSpec{1.0, 50e-9, 25e-9, 0.5}), Error);
}

TEST(Susceptibility, ReferenceParticleAgainstDepolarizationQuadrature) {
  const auto s = reference_setup();
  const auto sus = susceptibility(s.particle);
  EXPECT_NEAR(sus.s1, kS1, 1e-12);
  EXPECT_NEAR(sus.s2, kS2, 1e-12);
  EXPECT_GT(sus.s1, sus.s2);

  const double n_long = oracles::depolarization_by_quadrature(50e-9, 25e-9, 50e-9);
  const double n_short = oracles::depolarization_by_quadrature(50e-9, 25e-9, 25e-9);
  EXPECT_NEAR(n_long + 2.0 * n_short, 1.0, 1e-8);
  const auto n = depolarization_factors(s.particle);
  EXPECT_NEAR(n[0], n_long, 1e-8);
  EXPECT_NEAR(n[1], n_short, 1e-8);
}

TEST(CavityLinewidth, ReferenceCavity) {
  const auto s = reference_setup();
  const double kappa = cavity_linewidth(s.cavity);
  EXPECT_NEAR(units::from_angular(kappa), 74948.1145, 1e-4);
  EXPECT_NEAR(units::from_angular(kappa), 75.2e3, 0.01 * 75.2e3);
  auto c = s.cavity;
  c.finesse *= 2.0;
  EXPECT_DOUBLE_EQ(cavity_linewidth(c), 0.5 * kappa);
  c = s.cavity;
  c.length *= 2.0;
  EXPECT_DOUBLE_EQ(cavity_linewidth(c), 0.5 * kappa);
}

TEST(Couplings, ReferenceConfiguration) {
  const auto s = reference_setup();
  const auto in = mass_and_inertia(s.particle);
  const auto sus = susceptibility(s.particle);
  EXPECT_NEAR(coupling_g_ab(s, in, sus), kGab, 1e-12);
  EXPECT_NEAR(coupling_g_ac(s, in, sus), kGac, 1e-12);
}

TEST(Couplings, Nodes) {
  auto s = reference_setup();
  const auto in = mass_and_inertia(s.particle);
  const auto sus = susceptibility(s.particle);

  auto at_node = s;
  at_node.pose.y = 0.0;
  EXPECT_EQ(coupling_g_ab(at_node, in, sus), 0.0);

  auto aligned = s;
  aligned.pose.phi = 0.0;
  EXPECT_EQ(coupling_g_ac(aligned, in, sus), 0.0);

  auto far = s;
  far.pose.x = far.pose.z = 1e-3;
  EXPECT_LT(std::abs(coupling_g_ab(far, in, sus)), 1e-30);

  const SusceptibilityPair isotropic{2.0, 2.0};
  EXPECT_EQ(coupling_g_ac(s, in, isotropic), 0.0);
}

TEST(Couplings, PiPeriodicInPhi) {
  auto s = reference_setup();
  const auto in = mass_and_inertia(s.particle);
  const auto sus = susceptibility(s.particle);
  for (int k = 0; k < 64; ++k) {
    auto a = s;
    auto b = s;
    a.pose.phi = M_PI * k / 64.0;
    b.pose.phi = a.pose.phi + M_PI;
    EXPECT_NEAR(coupling_g_ab(a, in, sus), coupling_g_ab(b, in, sus), 1e-14);
    EXPECT_NEAR(coupling_g_ac(a, in, sus), coupling_g_ac(b, in, sus), 1e-14);
  }
}

TEST(SteadyAmplitude, Basics) {
  EXPECT_EQ(steady_amplitude({0.0, 1e5}, 1e4), cplx(0.0, 0.0));
  const cplx a = steady_amplitude({units::to_angular(2.66e9), units::khz(-47.7)}, 0.0);
  EXPECT_EQ(a.imag(), 0.0);
  EXPECT_NEAR(std::abs(a), 2.66e9 / (2.0 * 47.7e3), 1e-6);
  EXPECT_GE(std::abs(a), 1e4);
  EXPECT_LE(std::abs(a), 1e5);
  EXPECT_LT(std::abs(steady_amplitude({1e9, 1e5}, 1e30)), 1e-18);
  EXPECT_THROW(steady_amplitude({1.0, 0.0}, 0.0), Error);
}

TEST(SteadyAmplitude, ZeroKappaLimit) {
  const DriveTone tone{3e9, -2e5};
  const cplx exact = steady_amplitude(tone, 0.0);
  const cplx limit = steady_amplitude(tone, 1e-9);
  EXPECT_NEAR(std::abs(limit - exact), 0.0, 1e-12 * std::abs(exact));
}

TEST(SteadyDisplacements, Basics) {
  const ModeFrequencies f{1.0, 1e6, 1e7};
  const auto zero = steady_displacements(0.3, 0.2, 0.0, 0.0, f);
  EXPECT_EQ(zero.beta, 0.0);
  EXPECT_EQ(zero.gamma, 0.0);
  const cplx a1(3e4, -1e4), a2(-2e3, 5e3);
  const auto d = steady_displacements(0.3, 0.2, a1, a2, f);
  const auto flipped = steady_displacements(-0.3, 0.2, a1, a2, f);
  EXPECT_DOUBLE_EQ(flipped.beta, -d.beta);
  EXPECT_NEAR(d.beta * f.omega_m, -0.3 * (std::norm(a1) + std::norm(a2)), 1e-9);
}

TEST(EffectiveCouplings, ZeroDriveAndSymmetry) {
  const ModeFrequencies f{1.0, 2e6, 2e6};
  const auto zero = effective_couplings(0.3, 0.2, 0.0, 0.0, 1e5, 3e5, f);
  EXPECT_EQ(zero.G1, 0.0);
  EXPECT_EQ(zero.G2, 0.0);
  EXPECT_EQ(zero.G3, 0.0);
  const auto sym = effective_couplings(0.3, 0.3, cplx(1e4), cplx(1e4), 5e5, 5e5, f);
  EXPECT_NEAR(sym.G1, sym.G2, 1e-12 * std::abs(sym.G1));
}

TEST(EffectiveCouplings, PhaseInvariance) {
  const auto s = reference_setup();
  const cplx a1(1.2e4, 3e3), a2(-4e3, 9e3);
  const auto base = effective_couplings(0.3, 0.2, a1, a2, -3e5, -1.5e7, s.freqs);
  for (double theta : {0.3, 1.7, -2.2}) {
    const cplx rot = std::polar(1.0, theta);
    const auto r = effective_couplings(0.3, 0.2, rot * a1, rot * a2, -3e5, -1.5e7, s.freqs);
    EXPECT_NEAR(r.G1, base.G1, 1e-12 * std::abs(base.G1));
    EXPECT_NEAR(r.G2, base.G2, 1e-12 * std::abs(base.G2));
    EXPECT_NEAR(r.G3, base.G3, 1e-12 * std::abs(base.G3));
  }
}

TEST(EffectiveCouplings, ResonantDenominatorNamesTerm) {
  const auto s = reference_setup();
  try {
    effective_couplings(0.3, 0.2, cplx(1e4), cplx(1e4), -s.freqs.omega_m, -1e7, s.freqs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResonantDenominator);
    EXPECT_NE(std::string(e.what()).find("Delta1 + omega_m"), std::string::npos);
  }
}

TEST(Derive, ReferenceDriveMatchesIndependentEvaluation) {
  const auto s = reference_setup();
  const auto d = derive(s, fixtures::reference_tone1(s.freqs), fixtures::reference_tone2(s.freqs));
  // frozen from an independent evaluation
  EXPECT_NEAR(std::abs(d.rates.alpha1), 21925.607376796946, 1e-7);
  EXPECT_NEAR(std::abs(d.rates.alpha2), 10415.397091798077, 1e-7);
  EXPECT_NEAR(d.rates.G1, 10.165710260605078, 1e-9);
  EXPECT_NEAR(d.rates.G2, 4.018137327305478, 1e-9);
  EXPECT_NEAR(d.rates.G3, 11.22401732868819, 1e-9);
  EXPECT_NEAR(d.rates.beta, -115.61484321523037, 1e-8);
  EXPECT_NEAR(d.rates.gamma, -7.890652343045051, 1e-9);
  EXPECT_NEAR(d.rates.beta * s.freqs.omega_m,
              -d.rates.g_ab * (std::norm(d.rates.alpha1) + std::norm(d.rates.alpha2)), 1e-6);
  EXPECT_NEAR(beamsplitter_balance_residual(d.rates), 0.6047361940978325, 1e-12);
}

TEST(BalanceResidual, Cases) {
  SystemRates r;
  r.G1 = r.G2 = 3.0;
  EXPECT_EQ(beamsplitter_balance_residual(r), 0.0);
  r.G2 = 0.0;
  EXPECT_EQ(beamsplitter_balance_residual(r), 1.0);
  r.G1 = 0.0;
  EXPECT_THROW(beamsplitter_balance_residual(r), Error);
}

TEST(BalanceResidual, BisectionBalancesSecondTone) {
  const auto s = reference_setup();
  const auto t1 = fixtures::reference_tone1(s.freqs);
  auto t2 = fixtures::reference_tone2(s.freqs);
  t2.rabi = balance_second_rabi(s, t1, t2);
  const auto d = derive(s, t1, t2);
  EXPECT_LT(beamsplitter_balance_residual(d.rates), 1e-9);
}

TEST(PhotonFluctuation, Cases) {
  const auto r = photon_fluctuation_report(cplx(1e4), cplx(0.0, 4.0));
  EXPECT_DOUBLE_EQ(r[0].fluctuation, 1e2);
  EXPECT_DOUBLE_EQ(r[0].ratio, 1e2);
  EXPECT_DOUBLE_EQ(r[1].fluctuation, 2.0);
  const auto z = photon_fluctuation(0.0);
  EXPECT_EQ(z.magnitude, 0.0);
  EXPECT_EQ(z.fluctuation, 0.0);
  EXPECT_EQ(z.ratio, 0.0);
}

TEST(SqueezerCouplings, ZeroDriveAndSignStructure) {
  const auto s = reference_setup();
  const double delta = units::khz(200.0);
  const double d1 = delta + s.freqs.omega_m;
  const double d2 = delta + s.freqs.omega_phi;
  const auto zero = squeezer_couplings(0.3, 0.2, 0.0, 0.0, d1, d2, s.freqs);
  EXPECT_EQ(zero.G1, 0.0);
  EXPECT_EQ(zero.G3, 0.0);
  const auto a = squeezer_couplings(0.3, 0.2, cplx(2e4), cplx(1e4), d1, d2, s.freqs);
  const auto b = squeezer_couplings(0.3, -0.2, cplx(2e4), cplx(1e4), d1, d2, s.freqs);
  EXPECT_DOUBLE_EQ(b.G3, -a.G3);
  EXPECT_DOUBLE_EQ(b.G1, a.G1);
  EXPECT_NEAR(a.delta, delta, 1e-9);
  EXPECT_TRUE(a.warning.empty());
  EXPECT_THROW(squeezer_couplings(0.3, 0.2, cplx(2e4), cplx(1e4), d1, d2 + 1e4, s.freqs), Error);
}

TEST(SqueezerCouplings, WarnsWhenNotDispersive) {
  const auto s = reference_setup();
  const double delta = units::khz(200.0);
  const auto r = squeezer_couplings(100.0, 100.0, cplx(1e4), cplx(1e4), delta + s.freqs.omega_m,
                                    delta + s.freqs.omega_phi, s.freqs);
  EXPECT_FALSE(r.warning.empty());
}

}  // namespace
