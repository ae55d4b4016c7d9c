#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbfrs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that, when set, replaces the master seed given by flags.
inline constexpr const char* kSeedEnv = "GBFRS_SEED";

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines ('#' starts a comment) and returns them as `--key=value`
/// arguments for keys not already present in `args`.
std::vector<std::string> config_file_arguments(const std::string& path, const std::vector<std::string>& args);

}  // namespace gbfrs::cli
