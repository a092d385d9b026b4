#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace textclf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

/// Adds `--key=value` for every entry of the file named by `--config` whose
/// key is not already given as a flag. `args` excludes the program name.
/// Throws UsageError when `--config` lacks a value.
std::vector<std::string> merge_config(std::vector<std::string> args);

/// Parses and runs one subcommand. Failures print a single diagnostic line
/// to `err` and map to the exit codes above.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace textclf::cli
