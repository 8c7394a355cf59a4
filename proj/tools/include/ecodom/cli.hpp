#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecodom::cli {

/// Exit codes are a stable contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;   // compliance failure
inline constexpr int kExitInput = 2;  // usage or input error

/// Environment variable naming the default catalogue file.
inline constexpr const char* kCatalogueEnv = "ECODOM_CATALOGUE";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecodom::cli
