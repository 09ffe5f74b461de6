#pragma once
// Stable error codes for every failure the library raises. The CLI maps
// these to machine-readable single-line JSON error objects.

#include <stdexcept>
#include <string>

namespace folkso {

enum class ErrorCode {
  InvalidArgument,
  ZeroImpressions,
  ClicksExceedImpressions,
  ZeroTimeComponent,
  EmptyLabel,
  InvalidContext,
  UnreadableInput,
  EmptyTagSet,
  InsufficientTail,
  NonPositiveCellSize,
  DegenerateGeometry,
  SingularStencil,
  UnstableTimeStep,
  EmptySnapshot,
  UnknownQuery,
  MismatchedIds,
  DegenerateInput,
  IoFailure,
  VersionMismatch,
  CorruptSnapshot,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace folkso
