#include "pdcont/error.hpp"

namespace pdcont {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GaugeViolation: return "GaugeViolation";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::GeneralPositionViolation: return "GeneralPositionViolation";
    case ErrorCode::InfinityMismatch: return "InfinityMismatch";
    case ErrorCode::EmptyDiagram: return "EmptyDiagram";
    case ErrorCode::NotAcute: return "NotAcute";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DiagramCardinalityChanged: return "DiagramCardinalityChanged";
    case ErrorCode::AmbiguousMatching: return "AmbiguousMatching";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
  return 2 + static_cast<int>(code);
}

}  // namespace pdcont
