#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heis::cli {

enum ExitCode : int { ok = 0, invariant_failed = 1, usage_error = 2 };

// Runs one subcommand.  Tables go to `out` unless --output names a file;
// diagnostics and usage go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// args exclude the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heis::cli
