#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace levi {

enum class ErrorKind {
  Validation,
  Parse,
  Spec,
  ZeroDenominator,
  ResonantDenominator,
  BothZero,
  DegenerateGeometry,
  DegenerateSpectrum,
  VanishedBranch,
  NoTransfer,
  StepFailure,
  DimensionTooLarge,
  NotNormalized,
  FitDiverged,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Spec: return "spec";
    case ErrorKind::ZeroDenominator: return "zero-denominator";
    case ErrorKind::ResonantDenominator: return "resonant-denominator";
    case ErrorKind::BothZero: return "both-zero";
    case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::VanishedBranch: return "vanished-branch";
    case ErrorKind::NoTransfer: return "no-transfer";
    case ErrorKind::StepFailure: return "step-failure";
    case ErrorKind::DimensionTooLarge: return "dimension-too-large";
    case ErrorKind::NotNormalized: return "not-normalized";
    case ErrorKind::FitDiverged: return "fit-diverged";
  }
  return "unknown";
}

/// Input problems (bad config, bad flags) as opposed to numerical breakdowns.
constexpr bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::Validation || kind == ErrorKind::Parse || kind == ErrorKind::Spec;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Violation {
  std::string field;
  std::string reason;
};

/// Carries every failed invariant, not only the first one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorKind::Validation, summarize(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string out = "invalid setup:";
    for (const auto& v : vs) out += " [" + v.field + ": " + v.reason + "]";
    return out;
  }
  std::vector<Violation> violations_;
};

}  // namespace levi
