#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unisub {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedGroup,
  ParentMismatch,
  GroupMismatch,
  RankMismatch,
  GenericityFailure,
  UnsupportedFactor,
  IndexOutOfRange,
  ZeroVector,
  NotSolvable,
  EigenvectorFailure,
  NotProper,
  NotCentral,
  NotBlockwise,
  DegenerateDraws,
  InvalidRoots,
  ConfigError,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace unisub
