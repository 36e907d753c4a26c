#include "mero/cli/run.hpp"

#include <fstream>
#include <sstream>

#include "context.hpp"
#include "mero/error.hpp"

#ifndef MERO_VERSION
#define MERO_VERSION "0.0.0"
#endif

namespace mero::cli {

void Context::begin(const std::string& command, const Params& params) {
  params.finish();
  Json resolved = params.resolved();
  resolved["command"] = command;
  const std::string hash = hex_hash(config_hash(resolved));
  header_ = {
      std::string("mero ") + MERO_VERSION,
      "config-hash fnv1a64:" + hash,
      "command " + command,
      "sampling-offsets cell=(i+1/2)/n disk-lattice=(2j+1)/n-1 disk-boundary=pi(2j+1)/n "
      "circle=2pi*j/n sunflower=sqrt((j+1/2)/N),j*golden-angle; no randomness",
  };
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw UsageError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
  std::ofstream echo = create("config.resolved.txt");
  echo << resolved.dump(2) << '\n';
}

std::ofstream Context::create_raw(const std::string& name) {
  std::ofstream os(out_dir_ / name, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot write " + (out_dir_ / name).string());
  return os;
}

std::ofstream Context::create(const std::string& name) {
  std::ofstream os = create_raw(name);
  for (const std::string& line : header_) os << "# " << line << '\n';
  return os;
}

int run(const Json& config, const std::filesystem::path& out_dir, int workers, std::ostream& log) {
  if (workers < 1) {
    log << "usage error: worker count must be at least 1\n";
    return kExitUsage;
  }
  Context ctx(out_dir, workers, log);
  bool started = false;
  try {
    Params params(config, "");
    const std::string command = params.text("command");
    const Command handler = find_command(command);
    if (handler == nullptr) {
      std::string known;
      for (const std::string& n : command_names()) known += (known.empty() ? "" : ", ") + n;
      throw UsageError("config key 'command': unknown command '" + command + "' (expected one of " + known + ")");
    }
    started = true;
    return handler(params, ctx);
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    if (started && !ctx.header().empty()) {
      std::ofstream report = ctx.create("report.txt");
      report << "status = error\nerror = " << e.what() << '\n';
    }
    return kExitNegative;
  }
}

int run_file(const std::filesystem::path& config_path, const std::filesystem::path& out_dir, int workers,
             std::ostream& log) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    log << "usage error: cannot read config file " << config_path.string() << '\n';
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json config;
  try {
    config = Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    log << "usage error: config file " << config_path.string() << " is not valid JSON: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, out_dir, workers, log);
}

}  // namespace mero::cli
