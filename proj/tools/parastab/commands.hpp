#pragma once

#include <iosfwd>

#include "verify.hpp"

namespace parastab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Test seams.
struct CliHooks {
    ClosedFormMelnikov closed_form = melnikov_closed;
};

/// Parses argv, runs one subcommand and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

}  // namespace parastab::cli
