#pragma once

#include <iosfwd>

namespace raabe::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNoConvergence = 3 };

/// Entry point of the `raabe` tool. Results go to `out` (or --out PATH),
/// diagnostics and summaries to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace raabe::cli
