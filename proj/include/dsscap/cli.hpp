#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsscap {

/// Command-line entry point, separated from main() so tests can drive it.
/// Exit codes: 0 success, 1 invalid input or arguments, 2 internal
/// consistency failure (a bug in this library, never a property of the input).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dsscap
