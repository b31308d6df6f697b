#include "covercert/errors.hpp"

namespace covercert {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::kEmptyPolytope: return "EmptyPolytope";
    case ErrorCode::kEmptySection: return "EmptySection";
    case ErrorCode::kMissingRepresentation: return "MissingRepresentation";
    case ErrorCode::kInconsistentRepresentation: return "InconsistentRepresentation";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kFullDimRequired: return "FullDimRequired";
    case ErrorCode::kZeroNotInterior: return "ZeroNotInterior";
    case ErrorCode::kIllConditionedBasis: return "IllConditionedBasis";
    case ErrorCode::kNotUniform: return "NotUniform";
    case ErrorCode::kWeightsInvalid: return "WeightsInvalid";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNotIntegrable: return "NotIntegrable";
    case ErrorCode::kQuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::kNotIsotropic: return "NotIsotropic";
    case ErrorCode::kDegenerateMeasure: return "DegenerateMeasure";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace covercert
