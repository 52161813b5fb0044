#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddr {

// Full command-line surface, testable without a process boundary. args is
// argv without the program name. Returns 0 on success, 1 on data errors,
// 2 on usage errors.
int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ddr
