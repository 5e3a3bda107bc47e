#pragma once
// Command dispatcher behind the `compoly` executable.

#include <iosfwd>
#include <string>
#include <vector>

namespace compoly {

// Runs one subcommand from argv-style arguments (program name excluded) and
// writes the serialized result to `out` (or the file named by --out).
// Returns the process exit code: 0 on success, 1 on domain errors, 2 on
// usage errors (bad flags, malformed input expressions).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace compoly
