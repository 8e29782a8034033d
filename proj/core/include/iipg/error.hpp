#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iipg {

/// Failure categories raised by the prediction, rate and guidance routines.
enum class ErrorKind {
  InvalidArgument,
  NotUnit,
  DegenerateAngularMomentum,
  NoImpact,
  VerticalFlight,
  HyperbolicState,
  PhiZero,
  SingularDenominator,
  NonElliptic,
  NearCircular,
  AnomalyDomain,
  SingularAnomaly,
  Converged,
  Antipodal,
  DegenerateObjective,
  GuidanceHold,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace iipg
