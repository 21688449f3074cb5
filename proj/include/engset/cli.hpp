#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace engset::cli {

// Runs the command-line front end on `args` (everything after argv[0]),
// writing results to `out` and diagnostics to `err`.
//
// Exit status: 0 on success/convergence, 2 when a requested computation did
// not converge (or a check failed), 1 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace engset::cli
