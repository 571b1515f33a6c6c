#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropharm::cli {

/// Runs one invocation of the command-line tool. `args` excludes the program
/// name. Output goes to `out` (or the --out file), errors to `err` as a
/// single JSON line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropharm::cli
