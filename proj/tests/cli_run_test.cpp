#include "cli/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/config.hpp"

namespace cmjtree::cli {
namespace {

namespace fs = std::filesystem;

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("cmjtree_run_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  ExperimentConfig config(const std::string& text, const std::string& sub = "") {
    ExperimentConfig c = parse_config_text(text);
    c.out_dir = (dir_ / sub).string();
    return c;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::vector<std::string>> csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);) {
      std::vector<std::string> cells;
      std::istringstream ls(line);
      for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

TEST_F(RunTest, MalthusLinearWritesThetaTwo) {
  std::ostringstream console;
  const RunOutcome out = run(config(R"({"cmd":"malthus","spec":{"kind":"linear"}})"), console);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  const auto rows = csv(dir_ / "malthus.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][1], "theta");
  EXPECT_NEAR(std::stod(rows[1][1]), 2.0, 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "malthus.json"));
  EXPECT_NE(console.str().find("theta"), std::string::npos);
}

TEST_F(RunTest, RerunIsByteIdentical) {
  const char* configs[] = {
      R"({"cmd":"grow","spec":{"kind":"alpha_sublinear","alpha":0.5},"model":"cmj","n":200,"seed":4})",
      R"({"cmd":"coverage","spec":{"kind":"alpha_sublinear","alpha":0.5},"n":100,"k_list":[1,5,100],"trials":20,"seed":4})",
      R"({"cmd":"trajectory","spec":{"kind":"alpha_sublinear","alpha":0.5},"t_end":3,"dt":0.5,"trials":3,"seed":4})",
      R"({"cmd":"track","spec":{"kind":"alpha_sublinear","alpha":0.5},"n_max":300,"checkpoints":[100,300],"trials":3,"seed":4})",
      R"({"cmd":"maxdeg","alpha":0.5,"n_list":[10,100],"trials":5,"seed":4})",
      R"({"cmd":"race","spec":{"kind":"alpha_sublinear","alpha":0.5},"shape1":"line:5","shape2":"star:5","t_end":2,"trials":20,"seed":4})",
      R"({"cmd":"dominance","alpha":0.5,"d":2,"t_end":2,"trials":20,"seed":4})",
      R"({"cmd":"hoeffding","n_list":[1,3],"trials":1000,"seed":4})",
  };
  std::ostringstream console;
  for (const char* text : configs) {
    const RunOutcome a = run(config(text, "a"), console);
    const RunOutcome b = run(config(text, "b"), console);
    ASSERT_EQ(a.exit_code, kExitOk) << text << ": " << a.message;
    ASSERT_EQ(b.exit_code, kExitOk) << text << ": " << b.message;
    ASSERT_EQ(a.files.size(), b.files.size());
    for (const std::string& file : a.files) {
      const fs::path p(file);
      if (p.extension() != ".csv") continue;
      EXPECT_EQ(slurp(dir_ / "a" / p.filename()), slurp(dir_ / "b" / p.filename())) << text << " " << p.filename();
    }
  }
}

TEST_F(RunTest, CoverageFullKGivesOne) {
  std::ostringstream console;
  const RunOutcome out = run(
      config(R"({"cmd":"coverage","spec":{"kind":"alpha_sublinear","alpha":0.5},"n":100,"k_list":[10,50,100],"trials":30})"),
      console);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  const auto rows = csv(dir_ / "coverage.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][5], "coverage");
  EXPECT_EQ(rows[3][2], "100");
  EXPECT_EQ(std::stod(rows[3][5]), 1.0);
}

TEST_F(RunTest, GrowThenAnalyze) {
  std::ostringstream console;
  ASSERT_EQ(run(config(R"({"cmd":"grow","spec":{"kind":"linear"},"n":30,"seed":1})"), console).exit_code, kExitOk);
  ExperimentConfig analyze = config(R"({"cmd":"analyze","input":"unused","k":3})");
  analyze.input = (dir_ / "grow.csv").string();
  const RunOutcome out = run(analyze, console);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  const auto rows = csv(dir_ / "analyze.csv");
  EXPECT_EQ(rows.size(), 31u);
  EXPECT_EQ(csv(dir_ / "analyze_forest.csv").size(), 4u);
}

TEST_F(RunTest, ErrorsMapToExitCodes) {
  std::ostringstream console;
  ExperimentConfig bad = config(R"({"cmd":"analyze","input":"missing.csv"})");
  bad.input = (dir_ / "missing.csv").string();
  const RunOutcome missing = run(bad, console);
  EXPECT_EQ(missing.exit_code, kExitRuntimeError);
  EXPECT_FALSE(missing.message.empty());

  ExperimentConfig capped = config(R"({"cmd":"grow","spec":{"kind":"linear"},"model":"cmj","t_end":40,"pop_cap":100})");
  const RunOutcome cap = run(capped, console);
  EXPECT_EQ(cap.exit_code, kExitRuntimeError);
  EXPECT_NE(cap.message.find("population cap exceeded"), std::string::npos);
}

}  // namespace
}  // namespace cmjtree::cli
