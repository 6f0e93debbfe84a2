#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "reglab/cli.hpp"
#include "reglab/io.hpp"

namespace fs = std::filesystem;
using reglab::Json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("reglab_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(std::vector<std::string> args, std::string* text = nullptr) {
  std::ostringstream out, err;
  const int code = reglab::cli::run(args, out, err);
  if (text) *text = out.str() + err.str();
  return code;
}

Json load(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, VerifyExitCodes) {
  const fs::path dir = scratch("verify");
  EXPECT_EQ(run({"verify", "--family", "loglog4", "--n", "4", "--out", dir.string()}), 0);
  const Json j = load(dir / "verify_loglog4_n4.json");
  EXPECT_LE(j["residual"]["max_rel"].get<double>(), 1e-8);
  EXPECT_EQ(j["residual"]["radii"].size(), 100u);
  EXPECT_EQ(j["weak"].size(), 3u);
  EXPECT_TRUE(fs::exists(dir / "verify_loglog4_n4.csv"));

  EXPECT_EQ(run({"verify", "--family", "sinlog2nd", "--n", "3", "--out", dir.string()}), 0);
  EXPECT_EQ(run({"verify", "--family", "loglog4", "--n", "5", "--out", dir.string()}), 2);
  EXPECT_EQ(run({"verify", "--family", "sinlog4th", "--n", "4", "--out", dir.string()}), 2);
  EXPECT_EQ(run({"verify", "--family", "powerlaw:alpha=1", "--n", "4", "--out", dir.string()}), 2);
  EXPECT_EQ(run({"verify", "--n", "4"}), 2);
  EXPECT_EQ(run({"nonsense"}), 2);
  // a tolerance below the attainable floor is a verification failure
  EXPECT_EQ(run({"verify", "--family", "sinlog2nd", "--n", "4", "--no-weak", "--tol", "1e-30",
                 "--out", dir.string()}),
            1);
}

TEST(Cli, LorentzPowerLaw) {
  const fs::path dir = scratch("lorentz");
  ASSERT_EQ(run({"lorentz", "--function", "powerlaw:s=2", "--n", "4", "--p", "2", "--q", "inf",
                 "--out", dir.string()}),
            0);
  const Json j = load(dir / "lorentz.json");
  const double v = reglab::number_from_json(j["result"]["value"]);
  EXPECT_NEAR(v / (std::numbers::pi * std::sqrt(2.0)), 1.0, 0.01);
  EXPECT_EQ(j["q"], "inf");
  // L^{2,inf} of |x|^{-2} in R^3 is infinite
  ASSERT_EQ(run({"lorentz", "--function", "powerlaw:s=2", "--n", "3", "--p", "2", "--out",
                 dir.string(), "--name", "div"}),
            0);
  EXPECT_EQ(load(dir / "div.json")["result"]["verdict"], "Divergent");
}

TEST(Cli, MembershipTable) {
  const fs::path dir = scratch("membership");
  ASSERT_EQ(run({"membership", "--family", "sinlog4th", "--n", "6", "--k", "2", "--p-grid",
                 "2,2.5,2.9,3", "--out", dir.string()}),
            0);
  const Json rows = load(dir / "membership.json")["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0]["verdict"], "Member");
  EXPECT_EQ(rows[1]["verdict"], "Member");
  EXPECT_EQ(rows[2]["verdict"], "Member");
  EXPECT_EQ(rows[3]["verdict"], "NotMember");
}

TEST(Cli, MorreyAndDecay) {
  const fs::path dir = scratch("scan");
  ASSERT_EQ(run({"morrey", "--family", "powerlaw:alpha=0.7", "--n", "4", "--p", "3", "--out",
                 dir.string()}),
            0);
  EXPECT_NEAR(load(dir / "morrey.json")["scan"]["fit"]["slope"].get<double>(), 2.1, 0.05);
  ASSERT_EQ(run({"decay", "--family", "sinlog2nd", "--n", "4", "--theta", "0.1", "--count", "5",
                 "--out", dir.string()}),
            0);
  EXPECT_NEAR(load(dir / "decay.json")["scan"]["fit"]["slope"].get<double>(), 0.0, 0.02);
  EXPECT_EQ(run({"decay", "--n", "4", "--out", dir.string()}), 2);
  EXPECT_EQ(run({"decay", "--family", "sinlog2nd", "--n", "4", "--theta", "2", "--out",
                 dir.string()}),
            2);
}

TEST(Cli, EmptySuite) {
  const fs::path dir = scratch("empty");
  std::ofstream(dir / "empty.json") << "{}";
  ASSERT_EQ(run({"suite", "--config", (dir / "empty.json").string(), "--out",
                 (dir / "out").string()}),
            0);
  const Json s = load(dir / "out" / "summary.json");
  EXPECT_TRUE(s["jobs"].empty());
}

TEST(Cli, SuiteRejectsUnknownCommands) {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.json") << R"({"jobs":[{"command":"verify","parameters":{}},
                                                 {"command":"frobnicate"}]})";
  EXPECT_EQ(run({"suite", "--config", (dir / "bad.json").string(), "--out",
                 (dir / "out").string()}),
            2);
  EXPECT_FALSE(fs::exists(dir / "out" / "summary.json"));
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(run({"suite", "--config", (dir / "broken.json").string()}), 2);
}

TEST(Cli, SuiteContinuesAfterFailureAndIsDeterministic) {
  const fs::path dir = scratch("suite");
  std::ofstream(dir / "suite.json") << R"({
    "seed": 11,
    "jobs": [
      {"command": "verify", "parameters": {"family": "loglog4", "n": 5}},
      {"command": "lorentz", "parameters": {"field": "sinlog2nd", "n": 4, "p": 4,
                                            "center": "0.05,0,0,0", "radius": 0.02,
                                            "samples": 2048}},
      {"command": "decay", "parameters": {"corpus": "harmonic", "n": 5, "degree": 2,
                                          "samples": 512}},
      {"command": "membership", "parameters": {"family": "sinlog2nd", "n": 4,
                                               "p-grid": [2, 4]}}
    ]})";
  const std::string cfg = (dir / "suite.json").string();
  EXPECT_EQ(run({"suite", "--config", cfg, "--out", (dir / "a").string()}), 1);
  EXPECT_EQ(run({"suite", "--config", cfg, "--out", (dir / "b").string(), "--parallel"}), 1);
  const Json s = load(dir / "a" / "summary.json");
  ASSERT_EQ(s["jobs"].size(), 4u);
  EXPECT_EQ(s["jobs"][0]["status"], "config_error");
  for (int i = 1; i < 4; ++i) EXPECT_EQ(s["jobs"][i]["status"], "ok");
  EXPECT_EQ(s["failed"], 1);
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const std::string name = entry.path().filename().string();
    if (name == "timing.json") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / name)) << name;
  }
  EXPECT_EQ(load(dir / "a" / "timing.json")["jobs"].size(), 4u);
}
