#pragma once

#include <filesystem>
#include <iosfwd>

#include "mero/cli/config.hpp"

namespace mero::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// Executes one configuration, writing every output under out_dir.
/// Returns 0 on pass, 1 when the analysis is negative or a library error
/// occurs, 2 on usage errors. Diagnostics go to `log`.
int run(const Json& config, const std::filesystem::path& out_dir, int workers, std::ostream& log);

/// Loads and runs a configuration file; unreadable or malformed files give 2.
int run_file(const std::filesystem::path& config_path, const std::filesystem::path& out_dir, int workers,
             std::ostream& log);

}  // namespace mero::cli
