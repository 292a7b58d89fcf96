#pragma once

#include <iosfwd>

namespace hazardforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitScenario = 3;

/// Entry point of the `hazardforge` executable (subcommands run, batch,
/// replay, render). Never throws; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hazardforge
