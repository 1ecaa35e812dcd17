#pragma once

#include <ostream>
#include <string>

namespace qres::cli {

inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// "qres <version> (<git hash>)".
std::string version_string();

/// Runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qres::cli
