#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "mero/cli/config.hpp"

namespace mero::cli {

/// Output plumbing shared by the commands: the resolved configuration,
/// its hash, and header-stamped output files.
class Context {
 public:
  Context(std::filesystem::path out_dir, int workers, std::ostream& log)
      : out_dir_(std::move(out_dir)), workers_(workers), log_(log) {}

  /// Ends parameter resolution: rejects unknown keys, fixes the hash and
  /// writes the configuration echo.
  void begin(const std::string& command, const Params& params);

  int workers() const { return workers_; }
  std::ostream& log() { return log_; }
  const std::vector<std::string>& header() const { return header_; }

  /// Opens out_dir/name for writing with every header line as "# " comment.
  std::ofstream create(const std::string& name);
  /// Opens out_dir/name without a header (formats that place it themselves).
  std::ofstream create_raw(const std::string& name);

 private:
  std::filesystem::path out_dir_;
  int workers_;
  std::ostream& log_;
  std::vector<std::string> header_;
};

using Command = int (*)(Params&, Context&);

/// Looks up a command by name; nullptr when unknown.
Command find_command(const std::string& name);
std::vector<std::string> command_names();

}  // namespace mero::cli
