#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polarmax::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kSolverFailure = 2;

/// Runs one subcommand. `args` excludes the program name. Results go to the
/// --out file when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polarmax::cli
