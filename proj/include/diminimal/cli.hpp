#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diminimal {

/// Exit codes: 0 success, 1 invalid input, 2 failed verification.
int run(int argc, char** argv);

/// Same, with the arguments after the program name and explicit streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diminimal
