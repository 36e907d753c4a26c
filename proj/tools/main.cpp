#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mero/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mero: iteration experiments for meromorphic maps"};
  std::string config;
  std::string out = "out";
  int workers = 1;
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--workers", workers, "worker threads for parallel stages")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mero::cli::kExitUsage;
  }
  return mero::cli::run_file(config, out, workers, std::cerr);
}
