#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "teamdiv/config.hpp"
#include "test_support.hpp"

namespace teamdiv {
namespace {

using testing::TempDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kValid =
    R"({"id":"h1","year":2009,"authors":["a"],"topics":["x"]})"
    "\n"
    R"({"id":"h2","year":2010,"authors":["b"],"topics":["y"]})"
    "\n"
    R"({"id":"p1","year":2012,"authors":["a","b"],"topics":["x","y"],"citations_5y":7})"
    "\n";

TEST(CliValidate, ExitCodes) {
  TempDir dir("cli_validate");
  testing::spit(dir / "ok.jsonl", kValid);
  EXPECT_EQ(run({"validate", (dir / "ok.jsonl").string()}).code, 0);

  testing::spit(dir / "dup.jsonl", std::string(kValid) +
                                        R"({"id":"p1","year":2013,"authors":["a"],"topics":["x"]})"
                                        "\n" R"({"id":"p9","year":"x","authors":["a"],"topics":["x"]})"
                                        "\n");
  auto dup = run({"validate", (dir / "dup.jsonl").string()});
  EXPECT_EQ(dup.code, 1);
  EXPECT_NE(dup.out.find("dup.jsonl:4: duplicate id 'p1'"), std::string::npos) << dup.out;
  EXPECT_NE(dup.out.find("dup.jsonl:5: non-integer year"), std::string::npos) << dup.out;

  EXPECT_EQ(run({"validate", (dir / "missing.jsonl").string()}).code, 2);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"analyze"}).code, 2);
  EXPECT_EQ(run({"tables-check", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"analyze", "x.jsonl", "--strict", "--lenient"}).code, 2);
  EXPECT_EQ(run({"analyze", "x.jsonl", "--jobs", "0"}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  for (const char* flag : {"--config", "--output", "--format", "--strict", "--lenient", "--jobs"}) {
    EXPECT_NE(help.out.find(flag), std::string::npos) << flag;
  }
  auto sub = run({"analyze", "--help"});
  EXPECT_EQ(sub.code, 0);
  EXPECT_NE(sub.out.find("--top-k"), std::string::npos);
}

TEST(CliTablesCheck, PassesAndReports) {
  auto r = run({"tables-check"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("r = 0.9546"), std::string::npos);
  EXPECT_NE(r.out.find("published 12.05"), std::string::npos);
  EXPECT_NE(r.out.find("delta = 5.20"), std::string::npos);
}

class CliPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("cli_pipeline");
    auto r = run({"synth", "--output", (dir_->path() / "syn").string(), "--seed", "5",
                  "--n-papers", "2500", "--n-authors", "9000", "--coupling", "0.8"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { delete dir_; }
  static std::string corpus() { return (dir_->path() / "syn" / "corpus.jsonl").string(); }
  static std::string out(const std::string& name) { return (dir_->path() / name).string(); }
  static TempDir* dir_;
};
TempDir* CliPipeline::dir_ = nullptr;

TEST_F(CliPipeline, SynthEchoesParams) {
  const auto params = testing::slurp(dir_->path() / "syn" / "params.json");
  EXPECT_NE(params.find("\"rng_algorithm\""), std::string::npos);
  EXPECT_NE(params.find("\"seed\": 5"), std::string::npos);
  ASSERT_EQ(run({"synth", "-o", out("syn2"), "--seed", "5", "--n-papers", "2500", "--n-authors",
                 "9000", "--coupling", "0.8"}).code, 0);
  EXPECT_EQ(testing::snapshot(dir_->path() / "syn"), testing::snapshot(out("syn2")));
  EXPECT_EQ(run({"synth", "-o", out("bad"), "--n-authors", "5"}).code, 2);
}

TEST_F(CliPipeline, AnalyzeWritesReportAndVerdicts) {
  auto r = run({"analyze", corpus(), "-o", out("rep"), "--dump-papers", "--dump-profiles"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ratio vs median: r = "), std::string::npos);
  EXPECT_NE(r.out.find("(significant)"), std::string::npos);
  EXPECT_NE(r.out.find("A vs B: chi2 = "), std::string::npos);
  for (const char* f : {"tables/table1.csv", "tables/table2.csv", "tables/table3.csv",
                        "figures/fig2.svg", "figures/fig3.svg", "figures/fig4.svg", "report.md",
                        "config.json", "papers.csv", "profiles.jsonl"}) {
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(out("rep")) / f)) << f;
  }
}

TEST_F(CliPipeline, Reruns) {
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("run1"), "--dump-papers"}).code, 0);
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("run2"), "--dump-papers"}).code, 0);
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("run3"), "--dump-papers", "--jobs", "3"}).code, 0);
  const auto first = testing::snapshot(out("run1"));
  EXPECT_EQ(first.size(), 9u);
  EXPECT_EQ(first, testing::snapshot(out("run2")));
  EXPECT_EQ(first, testing::snapshot(out("run3")));
}

TEST_F(CliPipeline, TopKSensitivityKeepsSign) {
  auto k5 = run({"analyze", corpus(), "-o", out("k5"), "--top-k", "5", "--format", "csv"});
  auto k10 = run({"analyze", corpus(), "-o", out("k10"), "--top-k", "10", "--format", "csv"});
  ASSERT_EQ(k5.code, 0);
  ASSERT_EQ(k10.code, 0);
  auto r_of = [](const std::string& text) {
    auto pos = text.find("ratio vs median: r = ");
    return std::stod(text.substr(pos + 21));
  };
  EXPECT_GT(r_of(k5.out) * r_of(k10.out), 0.0);
}

TEST_F(CliPipeline, FlagsOverrideConfigOverrideDefaults) {
  testing::spit(dir_->path() / "cfg.json", R"({"top_k": 7, "window_years": 4})");
  auto cfg_of = [&](const std::string& name) {
    return config_from_json(testing::slurp(std::filesystem::path(out(name)) / "config.json"));
  };
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("d"), "--format", "csv"}).code, 0);
  EXPECT_EQ(cfg_of("d"), AnalysisConfig{});
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("c"), "--format", "csv", "--config",
                 out("cfg.json")}).code, 0);
  EXPECT_EQ(cfg_of("c").top_k, 7);
  EXPECT_EQ(cfg_of("c").window_years, 4);
  ASSERT_EQ(run({"analyze", corpus(), "-o", out("f"), "--format", "csv", "--config",
                 out("cfg.json"), "--top-k", "5", "--edge-threshold", "0.25",
                 "--inclusive-threshold"}).code, 0);
  EXPECT_EQ(cfg_of("f").top_k, 5);
  EXPECT_EQ(cfg_of("f").window_years, 4);
  EXPECT_EQ(cfg_of("f").edge_threshold, 0.25);
  EXPECT_TRUE(cfg_of("f").inclusive_threshold);

  testing::spit(dir_->path() / "bad.json", R"({"top_kk": 7})");
  EXPECT_EQ(run({"analyze", corpus(), "-o", out("b"), "--config", out("bad.json")}).code, 2);
  EXPECT_EQ(run({"analyze", corpus(), "-o", out("b"), "--config", out("none.json")}).code, 2);
  EXPECT_EQ(run({"analyze", corpus(), "-o", out("b"), "--top-k", "0"}).code, 2);
  EXPECT_EQ(run({"analyze", corpus(), "-o", out("b"), "--format", "pdf"}).code, 2);
}

TEST_F(CliPipeline, OutputDirFromEnvironment) {
  ::setenv(cli::kOutputDirEnv, out("env").c_str(), 1);
  auto r = run({"analyze", corpus(), "--format", "md"});
  ::unsetenv(cli::kOutputDirEnv);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(out("env")) / "report.md"));
}

TEST(CliAnalyze, EmptySetAndBadCorpus) {
  TempDir dir("cli_analyze");
  testing::spit(dir / "none.jsonl",
                R"({"id":"p","year":2012,"authors":["a","b"],"topics":["x"],"citations_5y":9})"
                "\n");
  auto empty = run({"analyze", (dir / "none.jsonl").string(), "-o", (dir / "o").string()});
  EXPECT_EQ(empty.code, 1);
  EXPECT_NE(empty.err.find("analysis set is empty"), std::string::npos);

  testing::spit(dir / "bad.jsonl", std::string(kValid) + "{broken\n");
  EXPECT_EQ(run({"analyze", (dir / "bad.jsonl").string(), "-o", (dir / "o").string()}).code, 1);
  auto lenient = run({"analyze", (dir / "bad.jsonl").string(), "-o", (dir / "o").string(),
                      "--lenient", "--format", "csv"});
  EXPECT_EQ(lenient.code, 0) << lenient.err;
  EXPECT_NE(lenient.err.find("skipped line 4"), std::string::npos);
  EXPECT_EQ(run({"analyze", (dir / "missing.jsonl").string()}).code, 2);
}

}  // namespace
}  // namespace teamdiv
