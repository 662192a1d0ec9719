#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causalineq {

// Entry point behind the command-line binary. `args` excludes the program
// name. Returns the process exit code: 0 on success, 1 when a checked
// constraint is violated by the data, 2 on usage, input or size-cap errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace causalineq
