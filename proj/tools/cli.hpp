#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teamdiv::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

inline constexpr const char* kOutputDirEnv = "TEAMDIV_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "teamdiv-out";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamdiv::cli
