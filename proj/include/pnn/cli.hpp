#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pnn::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `pnn` tool: train, predict, eval, path, bench and
/// trace subcommands. Normal output goes to `out`, diagnostics to `err`.
/// Returns the process exit code; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same with argv[1..] given as strings (argv[0] is supplied).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version() noexcept;

}  // namespace pnn::cli
