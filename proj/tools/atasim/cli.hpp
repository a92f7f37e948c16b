#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace atasim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAborted = 2;

// Full command line including the program name. Reports go to `out` unless --out is
// given; diagnostics go to `err`.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atasim::cli
