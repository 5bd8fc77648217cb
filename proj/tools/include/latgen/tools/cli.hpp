#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latgen::tools {

// args excludes the program name. Returns the process exit code:
// 0 ok, 1 I/O failure, 2 usage or validation error, 3 experiment checks failed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latgen::tools
