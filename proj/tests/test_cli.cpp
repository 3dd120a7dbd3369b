#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "trident/io.hpp"

namespace trident {
namespace {

namespace fs = std::filesystem;

struct RunResult
{
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& path)
{
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("trident_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string& args) const
  {
    const fs::path stdout_file = dir_ / "stdout.txt";
    const std::string command = "cd '" + dir_.string() + "' && '" + std::string(TRIDENT_CLI_PATH) + "' " + args +
                                " > '" + stdout_file.string() + "' 2> '" + (dir_ / "stderr.txt").string() + "'";
    const int status = std::system(command.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(stdout_file);
    return r;
  }

  fs::path dir_;
};

TEST_F(CliTest, MissingSubcommandIsInvalidInput)
{
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, ControllabilityAtReference)
{
  const RunResult r = run("controllability");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["growth"], nlohmann::json({4, 7}));
  EXPECT_EQ(j["signature"], nlohmann::json({0, 0}));
  EXPECT_EQ(j["dynamic_pair"].size(), 3u);
  for (const auto& pair : j["dynamic_pair"]) {
    EXPECT_EQ(pair["rank_v0"], 3);
    EXPECT_EQ(pair["rank_v1"], 6);
  }
}

TEST_F(CliTest, ControllabilitySweepAndOutputFile)
{
  ASSERT_EQ(run("controllability --sweep 50 --seed 3 --out report.json").code, 0);
  const auto j = nlohmann::json::parse(slurp(dir_ / "report.json"));
  EXPECT_EQ(j["sweep"]["growth_4_7"], 50);
  EXPECT_TRUE(j["sweep"]["failed_substreams"].empty());
}

TEST_F(CliTest, ControllabilityInvalidInput)
{
  EXPECT_EQ(run("controllability --point 0,0,1.5,0,1,1e-12,1").code, 2);
  EXPECT_EQ(run("controllability --point 1,2,3").code, 2);
  EXPECT_EQ(run("controllability --chart polar").code, 2);
  EXPECT_EQ(run("controllability --point 0,0,1.5,0,1,abc,1").code, 2);
}

TEST_F(CliTest, ControllabilityAcceptsAdaptedPoint)
{
  const RunResult r = run("controllability --chart adapted --point 0,1,1,1,-12.566370614359172,2.5132741228718345,"
                          "-12.566370614359172");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["growth"], nlohmann::json({4, 7}));
}

TEST_F(CliTest, GeodesicExampleWritesCsvAndSidecar)
{
  const RunResult r = run("geodesic --example 3 --dt 1e-2 --out ex3.csv");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["closed_form_applies"].get<bool>());
  EXPECT_LT(j["closed_form_max_deviation"].get<double>(), 1e-6);
  EXPECT_NEAR(j["K"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "ex3.csv.json")), j);

  std::ifstream csv(dir_ / "ex3.csv");
  const Trajectory t = read_trajectory_csv(csv);
  EXPECT_EQ(t.size(), 630u);
  EXPECT_TRUE(t.has_momenta());
  EXPECT_TRUE(t.has_controls());
  EXPECT_LT((t.q.back() - example_solution(3, t.t.back()).coords()).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST_F(CliTest, GeodesicFromFixtureIsDeterministic)
{
  const std::string fixture = std::string(TRIDENT_DATA_DIR) + "/example2.json";
  ASSERT_EQ(run("geodesic --constants '" + fixture + "' --dt 1e-2 --out a.csv").code, 0);
  ASSERT_EQ(run("geodesic --constants '" + fixture + "' --dt 1e-2 --out b.csv").code, 0);
  const std::string a = slurp(dir_ / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
}

TEST_F(CliTest, GeodesicInvalidInput)
{
  EXPECT_EQ(run("geodesic").code, 2);
  EXPECT_EQ(run("geodesic --example 4").code, 2);
  EXPECT_EQ(run("geodesic --example 1 --dt 0").code, 2);
  EXPECT_EQ(run("geodesic --example 1 --T -1").code, 2);
  EXPECT_EQ(run("geodesic --constants missing.json").code, 2);
  {
    std::ofstream zero(dir_ / "zero.json");
    zero << R"({"C5":1,"C6":0,"C7":0,"C11":0,"C12":0,"C13":0,"C14":0,"C15":0})";
  }
  EXPECT_EQ(run("geodesic --constants zero.json").code, 2);
  {
    std::ofstream broken(dir_ / "broken.json");
    broken << "{ not json";
  }
  EXPECT_EQ(run("geodesic --constants broken.json").code, 2);
}

TEST_F(CliTest, GeodesicNormalize)
{
  {
    std::ofstream f(dir_ / "big.json");
    f << R"({"C5":0,"C6":0,"C7":0,"C11":1.4,"C12":0,"C13":1,"C14":1,"C15":0.2})";
  }
  const RunResult r = run("geodesic --constants big.json --normalize --dt 1e-2");
  ASSERT_EQ(r.code, 0);
  const auto h = nlohmann::json::parse(r.out)["initial_momenta"].get<std::vector<double>>();
  EXPECT_NEAR(h[0] * h[0] + h[1] * h[1] + h[2] * h[2] + h[3] * h[3], 1.0, 1e-15);
  EXPECT_TRUE(fs::exists(dir_ / "geodesic.csv"));
}

TEST_F(CliTest, BracketMotionReportsAreaAndWritesTraces)
{
  const RunResult r = run("bracket-motion --out motion");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_LT(j["area_error"].get<double>(), 1e-6);
  EXPECT_NEAR(j["nilpotent"]["displacement"]["y1"].get<double>(), M_PI * 0.16, 1e-6);
  for (const char* name : {"nilpotent.csv", "original.csv", "nilpotent_mechanism.csv", "original_mechanism.csv",
                           "report.json"})
    EXPECT_TRUE(fs::exists(dir_ / "motion" / name)) << name;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "motion" / "report.json")), j);
}

TEST_F(CliTest, BracketMotionSweep)
{
  const RunResult r = run("bracket-motion --sweep --out motion");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& order : j["amplitude_sweep"]["orders"]) EXPECT_GE(order.get<double>(), 2.0);
}

TEST_F(CliTest, BracketMotionInvalidInput)
{
  EXPECT_EQ(run("bracket-motion --A 0").code, 2);
  EXPECT_EQ(run("bracket-motion --partner 7").code, 2);
  EXPECT_EQ(run("bracket-motion --cycles 0").code, 2);
}

TEST_F(CliTest, SymmetryCheckPassesAndIsByteIdentical)
{
  const RunResult a = run("symmetry-check");
  ASSERT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["so3_closes"].get<bool>());
  EXPECT_EQ(j["symmetries"].size(), 3u);
  EXPECT_EQ(j["fixed_points"].size(), 12u);
  for (const auto& p : j["fixed_points"]) EXPECT_LT(p["residual"].get<double>(), 1e-12);
  EXPECT_EQ(run("symmetry-check").out, a.out);
}

TEST_F(CliTest, SymmetryCheckPerturbedFails)
{
  const RunResult r = run("symmetry-check --perturb 0.01");
  ASSERT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_FALSE(j["symmetries"][0]["passed"].get<bool>());
  EXPECT_GT(j["symmetries"][0]["residual_norm"].get<double>(), 0.0);
  EXPECT_TRUE(j["symmetries"][0].contains("residual"));
  EXPECT_TRUE(j["symmetries"][1]["passed"].get<bool>());
}

}  // namespace
}  // namespace trident
