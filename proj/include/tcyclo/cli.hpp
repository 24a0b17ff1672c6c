#pragma once

#include <iosfwd>

namespace tcyclo::cli {

inline constexpr const char *kSchemaVersion = "1";

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
};

/// Entry point for the `tcyclo` binary. Records go to `out` as one JSON object
/// per line; diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace tcyclo::cli
