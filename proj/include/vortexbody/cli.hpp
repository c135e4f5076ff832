#pragma once

namespace vortexbody {

/// Command-line entry point (subcommands: simulate, verify, convergence,
/// forces). Returns the process exit code: 0 success, 1 verification
/// failure, 2 configuration error, 3 runtime halt.
int run_cli(int argc, const char* const* argv);

}  // namespace vortexbody
