#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flexautomata::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one command line. args[0] is the program name. "-" as a file name
/// means standard input / output.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace flexautomata::cli
