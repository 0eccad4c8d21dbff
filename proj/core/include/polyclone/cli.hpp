#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyclone::cli {

/// Runs one command. Reports go to `out`, diagnostics to `err`.
/// Exit status: 0 ran to completion, 1 a verdict checked with --assert is
/// false, 2 invalid input, 3 a cap was exceeded under --strict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyclone::cli
