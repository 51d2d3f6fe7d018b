#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace scalemodel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitModel = 2;

// Runs one subcommand (arch, sweep, optimal, validate, partition). args[0]
// is the program name. Diagnostics go to err as a single line.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace scalemodel::cli
