#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacobidet::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by main() and the tests. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jacobidet::cli
