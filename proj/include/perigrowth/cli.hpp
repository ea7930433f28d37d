#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perigrowth::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMathFailure = 1;
inline constexpr int kInputError = 2;

inline constexpr const char* kFormatHeader = "perigrowth-format 1";

// Runs the command line (without the program name). Results go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace perigrowth::cli
