#pragma once

#include <stdexcept>
#include <string>

namespace tent {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  InsufficientPrefix,
  InadmissiblePrefix,
  Uncertified,
  NoConvergence,
  PreconditionFailed,
  NoPath,
  Inadmissible,
  StageFailed,
  NonePass,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto an exit status and a structured record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tent
