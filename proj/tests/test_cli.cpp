#include <gtest/gtest.h>

#include <sstream>

#include "lry/cli.hpp"

using namespace lry;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(LRY_SAMPLES_DIR) + "/" + name; }
}  // namespace

TEST(Cli, ExampleIsDeterministic) {
  const auto a = run({"example-2gap", "--seed", "3"});
  const auto b = run({"example-2gap", "--seed", "3"});
  EXPECT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  const auto j = io::Json::parse(a.out);
  EXPECT_EQ(j["command"], "example-2gap");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["winsA"], 2);
  EXPECT_EQ(j["inputDigest"].get<std::string>().size(), 16u);
}

TEST(Cli, SimulateMatchesExample) {
  const auto sim = io::Json::parse(run({"simulate", "--input", sample("example_2gap.json"), "--seed", "3"}).out);
  const auto ex = io::Json::parse(run({"example-2gap", "--seed", "3"}).out);
  EXPECT_EQ(sim["candidates"], ex["candidates"]);
  EXPECT_EQ(sim["chosen"], ex["chosen"]);
}

TEST(Cli, SimulateWithInputPreferences) {
  const auto r = run({"simulate", "--input", sample("indifferent_pair.json"), "--seed", "1"});
  EXPECT_EQ(r.code, cli::kOk);
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["preferencesSource"], "input");
  EXPECT_EQ(j["outcome"]["kind"], "both_indifferent");
  EXPECT_EQ(j["option"], "option2");
}

TEST(Cli, CsvHasProvenanceLine) {
  const auto r = run({"example-2gap", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.rfind("# command=example-2gap seed=0 inputDigest=", 0), 0u);
  EXPECT_NE(r.out.find(io::csv_header()), std::string::npos);
}

TEST(Cli, VerifySmallSweep) {
  const auto r = run({"verify", "--count", "50", "--n-max", "8", "--seed", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, run({"verify", "--count", "50", "--n-max", "8", "--seed", "2"}).out);
  EXPECT_EQ(run({"verify", "--input", sample("example_2gap.json")}).code, cli::kOk);
}

TEST(Cli, Geodelta) {
  const auto r = run({"geodelta", "--delta", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  const auto j = io::Json::parse(r.out);
  EXPECT_TRUE(j.contains("ifBCutEveryGroup"));
}

TEST(Cli, OracleOnSampleGrid) {
  const auto r = run({"oracle", "--input", sample("grid_4x4.json"), "--plan", sample("plan_4x4_rows.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j["plan"]["valid"], true);
  EXPECT_EQ(j["plan"]["winsA"], 2);
  EXPECT_EQ(j["bestA"]["wins"], 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kInputError);
  EXPECT_EQ(run({"nonsense"}).code, cli::kInputError);
  EXPECT_EQ(run({"verify", "--count", "0"}).code, cli::kInputError);
  EXPECT_EQ(run({"geodelta", "--delta", "0"}).code, cli::kInputError);
  EXPECT_EQ(run({"example-2gap", "--format", "xml"}).code, cli::kInputError);
  EXPECT_EQ(run({"simulate", "--input", "/nonexistent.json"}).code, cli::kInputError);
  EXPECT_EQ(run({"oracle", "--plan", sample("plan_4x4_rows.json")}).code, cli::kInputError);
  const auto bad = run({"oracle", "--input", sample("grid_4x4.json"), "--plan", sample("grid_4x4.json")});
  EXPECT_EQ(bad.code, cli::kInputError);
  EXPECT_NE(bad.err.find("plan"), std::string::npos);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}
