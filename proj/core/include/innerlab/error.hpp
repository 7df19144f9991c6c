#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace innerlab {

enum class ErrorCode {
  EvaluationAtSingularity,
  SingularityInsideArc,
  NoConvergence,
  TargetNotUnimodular,
  DegenerateDegree,
  ValuesDisagree,
  SingularityTooClose,
  EndpointValuesDisagree,
  NoPreimageInArc,
  TargetEqualsCenterValue,
  UnivalenceNotCertified,
  SupportOverlap,
  EndpointStructureUnavailable,
  NotIncreasing,
  WrongFixedPointDerivative,
  EvaluationAtAtom,
  NoRootInRange,
  PreconditionFailed,
  UnsupportedFunction,
  ConfigInvalid,
  UnknownFixture,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this one exception type; the code
// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace innerlab
