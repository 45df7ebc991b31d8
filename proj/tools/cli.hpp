#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace potkit::cli {

/// Runs one subcommand. Returns the process exit code: 0 on success, 2 on
/// a validation error (bad flags, bad preconditions), 3 on a numerical
/// failure. Reports go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace potkit::cli
