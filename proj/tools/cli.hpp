#pragma once

#include <iosfwd>

namespace boltzlab::cli {

/// Exit codes: 0 success, 1 validation or I/O error, 2 non-convergence.
enum ExitCode { ok = 0, invalid = 1, not_converged = 2 };

/// Parses argv and runs one subcommand. Results go to `out` (when not written
/// to files) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace boltzlab::cli
