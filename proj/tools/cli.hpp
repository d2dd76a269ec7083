#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reqquant::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;

// Runs one command line (without the program name). Output goes to `out`,
// diagnostics to `err`; `in` feeds the session command.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace reqquant::cli
