#pragma once

#include <iosfwd>

namespace asplag {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_parse = 2 };

/// Entry point of the `asplag` tool: parse | compare | scan | eval | gen.
/// Returns 0 on success, 1 on usage or input errors, 2 on parse errors under --strict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace asplag
