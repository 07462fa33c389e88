// cli.hpp — dispatcher for the qsl command-line tool, separated from main()
// so tests can drive it in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsl::cli {

// Runs one invocation; `args` excludes the program name. Results go to
// `out`, diagnostics to `err`. Returns the exit code: 0 success, 1 invalid
// input or usage, 2 falsified invariant (a bound or conservation law the
// library exists to uphold came out violated).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsl::cli
