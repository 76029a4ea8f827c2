#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jlpath {

enum class ErrorCode {
  DiagonalViolation,
  SignViolation,
  ZeroAsymmetry,
  MalformedDatum,
  BoundExceeded,
  LevelViolation,
  OutOfRange,
  ImaginaryIndex,
  RealIndex,
  TableTooSmall,
  PreconditionFalsified,
  NotShortening,
  NoOccurrence,
  EnumerationBound,
  WitnessMissing,
  TruncationIncomparable,
  RootMismatch,
  UnknownLabel,
  Parse,
  Usage,
};

std::string_view error_code_name(ErrorCode code);

// A search or enumeration hit a configured bound before reaching a decision.
// Callers widen the bound and retry; these never mean "false".
bool is_bound_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jlpath
