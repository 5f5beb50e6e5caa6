#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridsight {

enum class ErrorCode {
  kParse,
  kEmptyExtract,
  kEmptyGraph,
  kInvalidVertex,
  kUndefinedRatio,
  kInvalidInput,
  kInvalidConfig,
  kBudgetExceeded,
  kIo,
};

/// Stable kebab-case name used in diagnostics, HTTP error bodies and CLI output.
std::string_view error_code_name(ErrorCode code) noexcept;

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised when a document is not well-formed; carries the byte offset of the fault.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace gridsight
