#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selpref::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args[0] is the program name). Normal output goes to
// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selpref::cli
