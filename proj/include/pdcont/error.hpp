#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdcont {

/// Every failure the library reports carries one of these codes. The CLI maps
/// them one-to-one onto process exit codes (see exit_code()).
enum class ErrorCode {
  ParseError,
  GaugeViolation,
  DegenerateSimplex,
  DegenerateInput,
  GeneralPositionViolation,
  InfinityMismatch,
  EmptyDiagram,
  NotAcute,
  DimensionMismatch,
  DiagramCardinalityChanged,
  AmbiguousMatching,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for an error class. 0 and 1 are reserved for success and
/// usage errors.
int exit_code(ErrorCode code) noexcept;

}  // namespace pdcont
