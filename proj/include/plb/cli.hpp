#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plb {

enum ExitCode { kExitOk = 0, kExitComputation = 1, kExitUsage = 2 };

// args excludes the program name. Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plb
