#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "graphaug/cli.hpp"

namespace graphaug::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    files[entry.path().filename().string()] = s.str();
  }
  return files;
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("graphaug_cli_" + tag);
  fs::remove_all(p);
  return p;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"shuffle"}).code, kExitUsage);
  EXPECT_EQ(call({"stats", "--input", "/nonexistent", "--name", "X"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--synthetic", "mixed", "--method", "nodesam", "--property", "p1", "--trials", "10",
                  "--seed", "1"})
                .code,
            kExitUsage);
  EXPECT_EQ(call({"augment", "--synthetic", "mixed", "--method", "nosuch", "--seed", "1", "--output",
                  scratch("bad").string()})
                .code,
            kExitUsage);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(call({"--help"}).code, kExitOk); }

TEST(Cli, StatsPrintsMutagCounts) {
  const CliResult r = call({"stats", "--input", GRAPHAUG_DATA_DIR "/mutag_structure", "--name", "MUTAG"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("188"), std::string::npos);
  EXPECT_NE(r.out.find("3371"), std::string::npos);
  EXPECT_NE(r.out.find("3721"), std::string::npos);
}

TEST(Cli, FailedPropertyExitsOne) {
  const CliResult r = call({"verify", "--synthetic", "mixed", "--method", "dropedge", "--property", "p1", "--trials",
                      "1000", "--seed", "3", "--threads", "1"});
  EXPECT_EQ(r.code, kExitVerifyFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, AugmentIsDeterministicAndReplayable) {
  const fs::path a = scratch("aug_a"), b = scratch("aug_b");
  const std::vector<std::string> base = {"augment", "--synthetic", "clustered", "--corpus-size", "12",
                                         "--method", "submix", "--count", "2", "--seed", "9", "--output"};
  auto with = [&](const fs::path& dir) {
    auto v = base;
    v.push_back(dir.string());
    return v;
  };
  ASSERT_EQ(call(with(a)).code, kExitOk);
  const auto first = snapshot(a);
  ASSERT_EQ(call(with(a)).code, kExitOk);
  EXPECT_EQ(snapshot(a), first);

  ASSERT_EQ(call({"replay", "--manifest", (a / "manifest.json").string(), "--output", b.string()}).code, kExitOk);
  auto second = snapshot(b);
  ASSERT_EQ(second.size(), first.size());
  for (const auto& [name, bytes] : first) {
    if (name != "manifest.json") EXPECT_EQ(second[name], bytes) << name;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, ManifestRoundTrips) {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.synthetic = "mixed";
  cfg.methods = {"nodesam", "submix:base"};
  cfg.properties = {"p1", "p3"};
  cfg.trials = 2500;
  cfg.seed = 123456789012345ULL;
  cfg.p = 0.25;
  cfg.output = "out";
  const RunConfig back = manifest_from_json(manifest_json(cfg));
  EXPECT_EQ(manifest_json(back), manifest_json(cfg));
  EXPECT_EQ(back.methods, cfg.methods);
  EXPECT_EQ(back.seed, cfg.seed);
}

TEST(Cli, OraclesPass) {
  const CliResult r = call({"oracles", "--trials", "5000", "--seed", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace graphaug::cli
