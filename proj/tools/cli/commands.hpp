#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace pmsr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitVerification = 3,
};

/// Runs the tool on `args` (program name excluded) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` next to `path` and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace pmsr::cli
