#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tempnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitParameter = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one subcommand. `args` excludes the program name. Errors are reported
/// as a single JSON object on `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempnet::cli
