#pragma once

#include <stdexcept>
#include <string>

namespace bibnov {

enum class ErrorCode {
  MissingField,
  MalformedYear,
  MalformedRecord,
  EmptyRecord,
  IoFailure,
  NoValidRecords,
  NoDocuments,
  InvalidArgument,
  EmptyGraph,
  WindowOutOfRange,
  DimensionMismatch,
  DuplicateId,
  InsufficientReferences,
  UnknownDocument,
  CorpusTooLarge,
  NoScores,
  NoOverlap,
  InvalidParams,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bibnov
