#pragma once

#include <string>
#include <vector>

namespace fhn::cli {

/// Exit codes: 0 success, 1 configuration/usage error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

int dispatch(int argc, char** argv);
/// args excludes the program name.
int dispatch(const std::vector<std::string>& args);

}  // namespace fhn::cli
