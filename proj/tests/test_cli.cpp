#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ZPE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("zpe_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p;
  }
  std::string out(const std::string& sub = "out") const { return "--out " + (dir_ / sub).string(); }
  json report(const std::string& sub = "out") const { return json::parse(slurp(dir_ / sub / "report.json")); }
  static std::string sample(const std::string& name) { return std::string(ZPE_SOURCE_DIR) + "/samples/" + name; }

  const json* find(const json& rep, const std::string& section, const std::string& record) const {
    for (const auto& s : rep["sections"]) {
      if (s["name"] != section) continue;
      for (const auto& r : s["records"]) {
        if (r["name"] == record) return &r;
      }
    }
    return nullptr;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PaperSampleAllPasses) {
  const auto r = run("--config " + sample("paper.json") + " " + out() + " all");
  EXPECT_EQ(r.code, 0) << r.output;
  const json rep = report();
  EXPECT_EQ(rep["schema_version"], 1);
  EXPECT_TRUE(rep["summary"]["all_pass"].get<bool>());
  EXPECT_EQ(rep["summary"]["total"], rep["summary"]["passed"]);
  ASSERT_EQ(rep["sections"].size(), 3u);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "causality_scan.csv"));
  const json* paper = find(rep, "vacuum-energy", "paper_raw");
  ASSERT_NE(paper, nullptr);
  EXPECT_EQ((*paper)["values"]["symbolic"]["exact"], "0");
  EXPECT_EQ((*find(rep, "vacuum-energy", "standard_raw"))["values"]["symbolic"]["exact"], "16*pi");
  EXPECT_EQ((*find(rep, "vacuum-energy", "standard_normal_ordered"))["values"]["symbolic"]["exact"], "0");
}

TEST_F(Cli, TenModeVacuumTable) {
  json modes = json::array();
  for (int m = 1; m <= 10; ++m) modes.push_back({0, 0, m});
  const auto cfg = write_config("ten.json", {{"modeset", {{"L", 2}, {"modes", modes}}}, {"scheme", {{"type", "paper"}, {"n", {"1/2", "1/4", "1/4"}}}}});
  const auto r = run("--config " + cfg.string() + " " + out() + " vacuum-energy");
  EXPECT_EQ(r.code, 0) << r.output;
  const json rep = report();
  // sum_m 2 * (2 pi m / 2) = 2 pi * 55
  EXPECT_EQ((*find(rep, "vacuum-energy", "standard_raw"))["values"]["symbolic"]["exact"], "110*pi");
  EXPECT_EQ((*find(rep, "vacuum-energy", "paper_raw"))["values"]["symbolic"]["exact"], "0");
}

TEST_F(Cli, SingleModeStandardOverride) {
  const auto r = run("--scheme standard " + out() + " vacuum-energy");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ((*find(report(), "vacuum-energy", "standard_raw"))["values"]["symbolic"]["exact"], "4*pi");
  EXPECT_NE(r.output.find("PASS vacuum-energy/paper_raw"), std::string::npos);
}

TEST_F(Cli, CustomSchemes) {
  auto ok = run("--config " + sample("custom_valid.json") + " " + out("a") + " verify-commutators");
  EXPECT_EQ(ok.code, 0) << ok.output;

  auto bad = run("--config " + sample("custom_bad_sum.json") + " " + out("b") + " verify-commutators");
  EXPECT_EQ(bad.code, 1) << bad.output;
  const json rep = report("b");
  const json* sum = find(rep, "verify-commutators", "spatial_bracket_sum");
  ASSERT_NE(sum, nullptr);
  EXPECT_FALSE((*sum)["pass"].get<bool>());
  EXPECT_EQ((*sum)["values"]["symbolic"], "3/2");
}

TEST_F(Cli, VevExamples) {
  auto r = run(out() + " vev \"ad[0,0]*a[0,0]\"");
  EXPECT_EQ(r.code, 0) << r.output;
  json rec = report()["sections"][0]["records"][0];
  EXPECT_EQ(rec["values"]["exact"]["exact"], "1");
  EXPECT_NEAR(rec["values"]["numeric"]["re"].get<double>(), 1.0, 1e-12);

  r = run(out() + " vev \"a[1,0]*ad[1,0]\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(report()["sections"][0]["records"][0]["values"]["exact"]["exact"], "1/3");

  r = run(out() + " vev 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(report()["sections"][0]["records"][0]["values"]["exact"]["exact"], "1");

  r = run(out() + " vev --file " + sample("expressions.txt"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(report()["sections"][0]["records"].size(), 6u);
}

TEST_F(Cli, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("--nmax 0 vacuum-energy").code, 2);

  auto r = run(out() + " vev \"a[4,0]\"");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("1:3"), std::string::npos) << r.output;

  auto cfg = write_config("unknown.json", {{"schem", "paper"}});
  r = run("--config " + cfg.string() + " " + out() + " all");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("schem"), std::string::npos) << r.output;

  cfg = write_config("sum.json", {{"scheme", {{"type", "paper"}, {"n", {"1/2", "1/2", "1/2"}}}}});
  r = run("--config " + cfg.string() + " " + out() + " vacuum-energy");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("scheme"), std::string::npos) << r.output;

  cfg = write_config("neg.json", {{"scheme", {{"type", "paper"}, {"n", {"3/2", "-1/2", 0}}}}});
  EXPECT_EQ(run("--config " + cfg.string() + " " + out() + " vacuum-energy").code, 2);

  cfg = write_config("mode.json", {{"modeset", {{"modes", {{0, 0, 0}}}}}});
  r = run("--config " + cfg.string() + " " + out() + " vacuum-energy");
  EXPECT_EQ(r.code, 2);

  const fs::path broken = dir_ / "broken.json";
  std::ofstream(broken) << "{ not json";
  EXPECT_EQ(run("--config " + broken.string() + " all").code, 2);
}

TEST_F(Cli, ReportsAreDeterministicWithFixedTimestamp) {
  const std::string args = "--config " + sample("paper.json") + " --timestamp 2000-01-01T00:00:00Z ";
  ASSERT_EQ(run(args + out() + " all").code, 0);
  const std::string first = slurp(dir_ / "out" / "report.json");
  const std::string first_csv = slurp(dir_ / "out" / "causality_scan.csv");
  ASSERT_EQ(run(args + out() + " all").code, 0);
  EXPECT_EQ(slurp(dir_ / "out" / "report.json"), first);
  EXPECT_EQ(slurp(dir_ / "out" / "causality_scan.csv"), first_csv);
  EXPECT_NE(first.find("2000-01-01T00:00:00Z"), std::string::npos);
}
