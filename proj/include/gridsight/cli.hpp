#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace gridsight::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `gridsight <ingest|analyze|optimize|export|serve> ...`.
/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gridsight::cli
