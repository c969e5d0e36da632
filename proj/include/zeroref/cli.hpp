#pragma once

#include <string>
#include <vector>

namespace zeroref {

// argv-style arguments including the program name. Returns the process exit
// code: 0 success, 1 usage error, 2 malformed data, 3 internal failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace zeroref
