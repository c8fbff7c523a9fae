#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynwl {

enum class ErrorCode {
  NodeNotFound,
  EmptyGraph,
  AttrDimMismatch,
  InvalidAttr,
  InvalidGraph,
  NotStatified,
  TimelineMismatch,
  TooLarge,
  ShapeError,
  TargetUndefined,
  InfeasibleTarget,
  SpecError,
  ParseError,
  InvalidTree,
};

std::string_view toString(ErrorCode code);

// Every failure raised by the library carries one of the codes above so callers
// (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dynwl
