#include "folkso/errors.hpp"

namespace folkso {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroImpressions: return "ZeroImpressions";
    case ErrorCode::ClicksExceedImpressions: return "ClicksExceedImpressions";
    case ErrorCode::ZeroTimeComponent: return "ZeroTimeComponent";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::UnreadableInput: return "UnreadableInput";
    case ErrorCode::EmptyTagSet: return "EmptyTagSet";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::NonPositiveCellSize: return "NonPositiveCellSize";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::SingularStencil: return "SingularStencil";
    case ErrorCode::UnstableTimeStep: return "UnstableTimeStep";
    case ErrorCode::EmptySnapshot: return "EmptySnapshot";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
    case ErrorCode::MismatchedIds: return "MismatchedIds";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
  }
  return "UnknownError";
}

}  // namespace folkso
