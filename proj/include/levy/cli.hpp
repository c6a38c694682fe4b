#pragma once

#include <cstdint>
#include <iosfwd>

namespace levy::cli {

/// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum ExitCode : int { Ok = 0, UsageError = 1, NumericalError = 2, Inconclusive = 3 };

/// Runs one subcommand. The one-line summary goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace levy::cli
