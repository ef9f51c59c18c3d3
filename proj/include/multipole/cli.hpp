#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multipole {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,        // bad command line, config or input JSON
  kExitDivisible = 3,    // input divisible by Q
  kExitNumerical = 4,    // any other failure of the computation
};

// Runs the command line `args` (without the program name). JSON goes to
// `out` unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multipole
