#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootlab {

// Exit codes: 0 success, 2 usage/validation, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rootlab
