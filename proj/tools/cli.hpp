#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpvol::cli {

// Runs the lpvol command line (args excludes the program name).  Returns the
// process exit code: 0 success, 1 computation failure, 2 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lpvol::cli
