#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acpm {

// Full command dispatch; args[0] is the program name. Exit codes:
// 0 all checks pass, 1 at least one check fails, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace acpm
