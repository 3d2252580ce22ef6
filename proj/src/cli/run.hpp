#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace graphondyn::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;  // overrides the config's "output"
  std::optional<std::size_t> threads;
};

/// Executes one config document and writes its artifacts plus manifest.json
/// into the output directory. Diagnostics go to `err`, a summary to `log`.
int run(const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace graphondyn::cli
