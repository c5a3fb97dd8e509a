#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace graphlp::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

// Runs one subcommand.  `args` excludes the program name.  Artifacts go to
// `out` unless --out names a file; diagnostics go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphlp::cli
