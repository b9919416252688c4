#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aflux {

// Runs one CLI invocation. `args` excludes the program name. Output goes to
// `out`, diagnostics to `err`; `stdout_is_tty` picks the default query
// format (aligned table on a terminal, JSON lines otherwise). Returns the
// process exit code: 0 success, 1 usage error, 2 transport or protocol
// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool stdout_is_tty);

}  // namespace aflux
