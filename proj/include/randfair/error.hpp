#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randfair {

enum class ErrorKind {
  // validation
  ParseError,
  InvalidArgument,
  NegativeMass,
  TotalMassNotOne,
  EmptyGroup,
  FewerThanTwoGroups,
  AlphaOutOfRange,
  ThresholdOutOfRange,
  UnknownCell,
  UnknownGroup,
  IncompleteClassifier,
  GroupMismatch,
  IncompleteAssignment,
  UnsupportedGroupCount,
  // metric / feasibility
  UndefinedMetric,
  Infeasible,
  // enumeration caps
  TooManyCells,
  TooManyPoints,
};

enum class ErrorCategory { Validation, Undefined, ResourceCap };

std::string_view kind_name(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace randfair
