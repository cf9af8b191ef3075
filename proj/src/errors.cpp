#include "bibnov/errors.hpp"

namespace bibnov {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::MalformedYear: return "MalformedYear";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::NoValidRecords: return "NoValidRecords";
    case ErrorCode::NoDocuments: return "NoDocuments";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InsufficientReferences: return "InsufficientReferences";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::CorpusTooLarge: return "CorpusTooLarge";
    case ErrorCode::NoScores: return "NoScores";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace bibnov
