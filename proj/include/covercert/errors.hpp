#pragma once

#include <stdexcept>
#include <string>

namespace covercert {

// Numeric values are part of the C ABI (see covercert.h); append only.
enum class ErrorCode : int {
  kParse = 1,
  kUnboundedPolytope = 2,
  kEmptyPolytope = 3,
  kEmptySection = 4,
  kMissingRepresentation = 5,
  kInconsistentRepresentation = 6,
  kDimensionTooLarge = 7,
  kFullDimRequired = 8,
  kZeroNotInterior = 9,
  kIllConditionedBasis = 10,
  kNotUniform = 11,
  kWeightsInvalid = 12,
  kBudgetExceeded = 13,
  kInfeasible = 14,
  kNotIntegrable = 15,
  kQuadratureBudgetExceeded = 16,
  kNotIsotropic = 17,
  kDegenerateMeasure = 18,
  kUnsupportedDimension = 19,
  kInvalidArgument = 20,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_name(code)) + ": " + what);
}

}  // namespace covercert
