#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sebayes {

enum class ErrorCode {
  AllZeroMass,
  InvalidMass,
  InvalidArgument,
  EmptySamples,
  InvalidGrid,
  EverythingExcluded,
  OutOfRange,
  EmptyCategorySet,
  DimensionMismatch,
  InvalidStep,
  ZeroDenominator,
  NonPositiveK,
  NonPositiveInput,
  EmptyCalibration,
  EmptyPrimary,
  NonPositiveParams,
  InvalidProbability,
  SchemaMismatch,
  DuplicateKey,
  InvalidValue,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` identifies
// the failure class and `what()` carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sebayes
