#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entlab {

// Command-line entry point. Exit codes: 0 success, 2 validation failure,
// 3 threshold-catalog miss, 4 resource guard.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace entlab
