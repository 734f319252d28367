#pragma once

#include <stdexcept>
#include <string>

namespace scemix {

// Failure categories surfaced by the library. Data errors map to CLI exit
// code 3, numerical failures to exit code 4.
enum class ErrorCode {
  NonGriddedSites,
  EmptyField,
  EmptyLabels,
  NoConvectiveFields,
  DegenerateData,
  InsufficientData,
  NoExceedances,
  SupportViolation,
  NegativeValue,
  ProbabilityOutOfRange,
  DegenerateConditioning,
  Unsatisfiable,
  NonConvergence,
  RejectionStall,
  CholeskyFailure,
  AllWeightsZero,
  RegionMismatch,
  EmptyRegion,
  EmptyInput,
  LabelsRequired,
  FormatError,
  IoError,
  ConfigError,
  DigestMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  bool is_numerical() const {
    return code_ == ErrorCode::NonConvergence || code_ == ErrorCode::CholeskyFailure ||
           code_ == ErrorCode::AllWeightsZero || code_ == ErrorCode::RejectionStall ||
           code_ == ErrorCode::SupportViolation;
  }

 private:
  ErrorCode code_;
};

}  // namespace scemix
