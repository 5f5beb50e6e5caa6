#include "gridsight/error.hpp"

namespace gridsight {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kEmptyExtract: return "empty-extract";
    case ErrorCode::kEmptyGraph: return "empty-graph";
    case ErrorCode::kInvalidVertex: return "invalid-vertex";
    case ErrorCode::kUndefinedRatio: return "undefined-ratio";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kIo: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error(ErrorCode::kParse, message + " at byte " + std::to_string(offset)), offset_(offset) {}

}  // namespace gridsight
