#include "randfair/error.hpp"

namespace randfair {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::TotalMassNotOne: return "TotalMassNotOne";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::FewerThanTwoGroups: return "FewerThanTwoGroups";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
    case ErrorKind::IncompleteClassifier: return "IncompleteClassifier";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::UnsupportedGroupCount: return "UnsupportedGroupCount";
    case ErrorKind::UndefinedMetric: return "UndefinedMetric";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::TooManyCells: return "TooManyCells";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UndefinedMetric:
    case ErrorKind::Infeasible:
      return ErrorCategory::Undefined;
    case ErrorKind::TooManyCells:
    case ErrorKind::TooManyPoints:
      return ErrorCategory::ResourceCap;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace randfair
