#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heatlaw::cli {

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatlaw::cli
