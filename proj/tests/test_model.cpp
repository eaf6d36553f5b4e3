#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "levi/model.hpp"
#include "levi/units.hpp"

#include "fixtures.hpp"

namespace {

using namespace levi;

using fixtures::reference_setup;

bool has_field(const std::vector<Violation>& vs, const std::string& field) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.field == field; });
}

TEST(Units, AngularConversion) {
  EXPECT_DOUBLE_EQ(units::to_angular(247.7e3), 2.0 * M_PI * 247.7e3);
  EXPECT_EQ(units::to_angular(0.0), 0.0);
  const double x = 75.2e3;
  EXPECT_NEAR(units::from_angular(units::to_angular(x)), x, 1e-15 * x);
}

TEST(ValidateSetup, ReferenceParametersAreValid) {
  const auto s = reference_setup();
  const auto report = check_setup(s);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.warnings.empty());
  EXPECT_NO_THROW(validate_setup(s));
}

TEST(ValidateSetup, ZeroShortAxisIsViolation) {
  auto s = reference_setup();
  s.particle.semi_axis_short = 0.0;
  EXPECT_TRUE(has_field(check_setup(s).violations, "semi_axis_short"));
}

TEST(ValidateSetup, InconsistentWavenumber) {
  auto s = reference_setup();
  s.cavity.wavenumber = 1.0;
  EXPECT_TRUE(has_field(check_setup(s).violations, "wavenumber"));
}

TEST(ValidateSetup, ReportsEveryViolationAtOnce) {
  auto s = reference_setup();
  s.particle.density = -1.0;
  s.cavity.finesse = 0.0;
  s.freqs.omega_m = 0.0;
  s.particle.semi_axis_long = 10e-9;  // now shorter than the short axis
  try {
    validate_setup(s);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const auto& vs = e.violations();
    EXPECT_TRUE(has_field(vs, "density"));
    EXPECT_TRUE(has_field(vs, "finesse"));
    EXPECT_TRUE(has_field(vs, "omega_m"));
    EXPECT_TRUE(has_field(vs, "semi_axis_long"));
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(ValidateSetup, Idempotent) {
  const auto s = reference_setup();
  const auto& once = validate_setup(s);
  EXPECT_TRUE(check_setup(validate_setup(once)).ok());
}

TEST(ValidateSetup, InvertedModeOrderingOnlyWarns) {
  auto s = reference_setup();
  std::swap(s.freqs.omega_m, s.freqs.omega_phi);
  const auto report = check_setup(s);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.warnings.size(), 1u);
}

TEST(ParticlePose, AngleNormalizedIntoHalfOpenRange) {
  EXPECT_NEAR(ParticlePose::make(0, 0, 0, 5.0 * M_PI / 4.0).phi, M_PI / 4.0, 1e-15);
  EXPECT_NEAR(ParticlePose::make(0, 0, 0, -M_PI / 4.0).phi, 3.0 * M_PI / 4.0, 1e-15);
  EXPECT_EQ(ParticlePose::make(0, 0, 0, M_PI).phi, 0.0);
}

TEST(FockState, IndexRoundTrip) {
  const FockState shape{{2, 3, 1}, {}};
  EXPECT_EQ(FockState::dimension(shape.cutoffs), 24u);
  for (std::size_t i = 0; i < 24; ++i) EXPECT_EQ(shape.index(shape.occupations(i)), i);
  EXPECT_EQ(shape.index({0, 0, 1}), 1u);  // last mode fastest
  EXPECT_EQ(shape.index({1, 0, 0}), 8u);
}

}  // namespace
