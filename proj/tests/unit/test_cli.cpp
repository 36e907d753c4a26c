#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mero/cli/config.hpp"
#include "mero/cli/run.hpp"

namespace fs = std::filesystem;
using mero::cli::Json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mero_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) out[entry.path().filename().string()] = slurp(entry.path());
  return out;
}

struct Outcome {
  int code;
  std::string log;
  fs::path dir;
};

Outcome run(const Json& config, const std::string& name, int workers = 1) {
  const fs::path dir = fresh_dir(name);
  std::ostringstream log;
  const int code = mero::cli::run(config, dir, workers, log);
  return {code, log.str(), dir};
}

std::string hash_line(const fs::path& report) {
  std::istringstream in(slurp(report));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# config-hash ", 0) == 0) return line;
  }
  return "";
}

Json exp_map() { return {{"expr", "exp(z)"}}; }
Json exp_over_z() { return {{"expr", "exp(z)/z"}, {"poles", {{0, 0}}}}; }

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ClassifyPassesWithHeaders) {
  const auto r = run({{"command", "classify"}, {"map", exp_map()}, {"z0", 1}}, "classify");
  EXPECT_EQ(r.code, mero::cli::kExitPass) << r.log;
  const std::string report = slurp(r.dir / "report.txt");
  EXPECT_EQ(report.rfind("# mero 0.1.0\n", 0), 0u);
  EXPECT_NE(report.find("# config-hash fnv1a64:"), std::string::npos);
  EXPECT_NE(report.find("# command classify"), std::string::npos);
  EXPECT_NE(report.find("escaping"), std::string::npos);
  EXPECT_EQ(slurp(r.dir / "orbit.csv").rfind("# mero 0.1.0\n", 0), 0u);
  EXPECT_TRUE(fs::exists(r.dir / "config.resolved.txt"));
}

TEST(Cli, EveryOutputCarriesTheHash) {
  const auto r = run({{"command", "render"}, {"map", exp_over_z()}, {"window", {-2, 2, -2, 2}}, {"width", 8}, {"height", 8}}, "render_hash");
  ASSERT_EQ(r.code, 0) << r.log;
  const std::string hash = hash_line(r.dir / "report.txt");
  ASSERT_FALSE(hash.empty());
  for (const auto& [name, text] : tree(r.dir)) EXPECT_NE(text.find(hash.substr(2)), std::string::npos) << name;
}

TEST(Cli, UnknownKeyIsUsageError) {
  const auto r = run({{"command", "classify"}, {"map", exp_map()}, {"z0", 1}, {"bogus", 3}}, "bogus");
  EXPECT_EQ(r.code, mero::cli::kExitUsage);
  EXPECT_NE(r.log.find("unknown config key 'bogus'"), std::string::npos) << r.log;
}

TEST(Cli, MissingOrMalformedKeysAreUsageErrors) {
  EXPECT_EQ(run({{"command", "classify"}, {"z0", 1}}, "missing").code, 2);
  EXPECT_EQ(run({{"command", "classify"}, {"map", exp_map()}, {"z0", "one"}}, "typed").code, 2);
  EXPECT_EQ(run({{"command", "classify"}, {"map", {{"expr", "exp(z"}}}, {"z0", 1}}, "parse").code, 2);
  EXPECT_EQ(run({{"command", "teleport"}}, "command").code, 2);
  EXPECT_EQ(run(Json::array(), "array").code, 2);
}

TEST(Cli, NegativeResultsExitOne) {
  const auto commute = run({{"command", "commute"}, {"f", exp_over_z()}, {"g", {{"expr", "z+1"}}}}, "commute_fail");
  EXPECT_EQ(commute.code, mero::cli::kExitNegative);
  EXPECT_NE(slurp(commute.dir / "violations.csv").find("\n0,"), std::string::npos);
  const auto fast = run({{"command", "fast-escape"}, {"map", exp_map()}, {"z", -100}, {"r1", 10}}, "fast_fail");
  EXPECT_EQ(fast.code, mero::cli::kExitNegative) << fast.log;
}

TEST(Cli, LibraryErrorsExitOneWithReport) {
  const auto r = run({{"command", "construct"}, {"R", 1.0}, {"k", {3, 7, 13}}}, "construct_error");
  EXPECT_EQ(r.code, mero::cli::kExitNegative) << r.log;
  const std::string report = slurp(r.dir / "report.txt");
  EXPECT_NE(report.find("status = error"), std::string::npos);
  EXPECT_NE(report.find("B_+"), std::string::npos);
}

TEST(Cli, PassingCommands) {
  EXPECT_EQ(run({{"command", "commute"}, {"f", exp_over_z()}, {"g", {{"compose", {exp_over_z(), exp_over_z()}}}}}, "commute_pass").code, 0);
  EXPECT_EQ(run({{"command", "ladder"}, {"map", exp_map()}, {"r1", 10}, {"n", 3}}, "ladder").code, 0);
  EXPECT_EQ(run({{"command", "itinerary"}, {"map", exp_over_z()}, {"R", 10}, {"bits", {"inf", "0", "inf"}}}, "itinerary").code, 0);
  EXPECT_EQ(run({{"command", "backward"}, {"map", {{"expr", "exp(z)+1/z"}, {"poles", {{0, 0}}}}}, {"depth", 2}, {"region", {-6, 6, -6, 6}}}, "backward").code, 0);
  EXPECT_EQ(run({{"command", "thread"}, {"map", exp_map()}, {"regions", {{1, 0, 0.2}, {2.718281828459045, 0, 0.2}}}}, "thread").code, 0);
}

TEST(Cli, HashIsStableAndSensitive) {
  const Json base{{"command", "classify"}, {"map", exp_map()}, {"z0", 1}};
  const auto a = run(base, "hash_a");
  const auto b = run(base, "hash_b");
  Json with_default = base;
  with_default["max_steps"] = 100;
  const auto c = run(with_default, "hash_c");
  Json changed = base;
  changed["max_steps"] = 99;
  const auto d = run(changed, "hash_d");
  const std::string h = hash_line(a.dir / "report.txt");
  ASSERT_FALSE(h.empty());
  EXPECT_EQ(h, hash_line(b.dir / "report.txt"));
  EXPECT_EQ(h, hash_line(c.dir / "report.txt"));
  EXPECT_NE(h, hash_line(d.dir / "report.txt"));
  EXPECT_EQ(mero::cli::config_hash(Json{{"a", 1}}), mero::cli::config_hash(Json{{"a", 1}}));
  EXPECT_NE(mero::cli::config_hash(Json{{"a", 1}}), mero::cli::config_hash(Json{{"a", 2}}));
}

TEST(Cli, Fnv1aReferenceValues) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(mero::cli::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(mero::cli::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(mero::cli::fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Cli, OutputsIndependentOfWorkers) {
  const Json configs[] = {
      {{"command", "render"}, {"map", exp_over_z()}, {"window", {-4, 4, -4, 4}}, {"width", 40}, {"height", 30}, {"max_steps", 50}},
      {{"command", "backward"}, {"map", {{"expr", "exp(z)+1/z"}, {"poles", {{0, 0}}}}}, {"depth", 3}, {"region", {-6, 6, -6, 6}}, {"seed_density", 16}},
      {{"command", "commute"}, {"f", exp_over_z()}, {"g", {{"expr", "z+1"}}}},
      {{"command", "julia-compare"}, {"f", exp_over_z()}, {"g", {{"compose", {exp_over_z(), exp_over_z()}}}}, {"window", {-4, 4, -4, 4}}, {"width", 24}, {"height", 24}},
  };
  int i = 0;
  for (const Json& config : configs) {
    const auto one = run(config, "w1_" + std::to_string(i));
    const auto eight = run(config, "w8_" + std::to_string(i), 8);
    EXPECT_EQ(one.code, eight.code);
    EXPECT_EQ(tree(one.dir), tree(eight.dir)) << config["command"];
    ++i;
  }
}

TEST(Cli, ExecutableExitCodes) {
  const fs::path dir = fresh_dir("binary");
  {
    std::ofstream(dir / "ok.json") << R"json({"command": "classify", "map": {"expr": "exp(z)"}, "z0": 1})json";
    std::ofstream(dir / "bad.json") << "{ not json";
  }
  const std::string tool = MERO_TOOL_PATH;
  const std::string quiet = " > /dev/null 2>&1";
  EXPECT_EQ(shell(tool + " --config " + (dir / "ok.json").string() + " --out " + (dir / "out").string() + quiet), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "report.txt"));
  EXPECT_EQ(shell(tool + " --config " + (dir / "bad.json").string() + " --out " + (dir / "o2").string() + quiet), 2);
  EXPECT_EQ(shell(tool + quiet), 2);
  EXPECT_EQ(shell(tool + " --config " + (dir / "ok.json").string() + " --workers 0" + quiet), 2);
  EXPECT_EQ(shell(tool + " --config " + (dir / "missing.json").string() + quiet), 2);
}
