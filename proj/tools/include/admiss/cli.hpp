#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace admiss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `admiss` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// ADMISS_SEEDLESS=1 is set.
bool seedless();

}  // namespace admiss::cli
