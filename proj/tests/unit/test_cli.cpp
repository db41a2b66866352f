#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "gnmwis/errors.hpp"
#include "gnmwis/io.hpp"

using namespace gnmwis;
using namespace gnmwis::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = GNMWIS_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

RunConfig solve_config(const std::string& instance) {
  RunConfig c;
  c.command = "solve";
  c.instances = {data(instance)};
  c.threads = 2;
  c.no_timing = true;
  return c;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(GNMWIS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("gnmwis_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Solve, K2Defaults) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(solve_config("k2.mwis"), out, err), kSuccess);
  auto r = parse_result(out.str());
  EXPECT_EQ(r.instance_name, "k2");
  EXPECT_EQ(r.best_objective, 4.0);
  EXPECT_EQ(r.starts.size(), 16u);
  for (const auto& s : r.starts) EXPECT_TRUE(s.valid && s.maximal);
  EXPECT_FALSE(r.gap_percent);
  EXPECT_EQ(r.schedule.iterations, 1000u);
  EXPECT_EQ(r.schedule.mode, "linear");
}

TEST(Solve, K2WithReference) {
  auto c = solve_config("k2.mwis");
  c.reference_csv = data("refs.csv");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(c, out, err), kSuccess);
  auto r = parse_result(out.str());
  ASSERT_TRUE(r.gap_percent);
  EXPECT_EQ(format_gap(r.gap_percent), "0.00");
  EXPECT_NE(err.str().find("Best Gap 0.00%"), std::string::npos) << err.str();
}

TEST(Solve, WarmStartAtOptimum) {
  auto c = solve_config("k2.mwis");
  c.warm_starts = {data("k2_optimum.txt")};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(c, out, err), kSuccess);
  auto r = parse_result(out.str());
  ASSERT_EQ(r.starts.size(), 1u);
  EXPECT_EQ(r.starts[0].kind, "warm");
  EXPECT_EQ(r.starts[0].id, "k2_optimum.txt");
  EXPECT_EQ(r.starts[0].objective, 4.0);
}

TEST(Solve, ByteIdenticalAcrossThreadCounts) {
  auto c = solve_config("bench/p5.mwis");
  c.seed = 9;
  std::ostringstream a, b, err;
  c.threads = 1;
  cmd_solve(c, a, err);
  c.threads = 4;
  cmd_solve(c, b, err);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Solve, TraceCsv) {
  auto c = solve_config("k2.mwis");
  c.trace = true;
  c.starts = 2;
  c.iterations = 5;
  std::ostringstream out, err;
  cmd_solve(c, out, err);
  std::istringstream lines(err.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "start,iteration,gamma,energy,mass,step_norm,fallbacks");
  std::size_t rows = 0;
  for (std::string l; std::getline(lines, l);)
    if (!l.empty() && std::isdigit(static_cast<unsigned char>(l[0]))) ++rows;
  EXPECT_EQ(rows, 10u);
}

TEST(Solve, ConfigValidation) {
  auto c = solve_config("k2.mwis");
  std::ostringstream out, err;
  c.gamma0 = 2.0;
  EXPECT_THROW(cmd_solve(c, out, err), InputError);
  c = solve_config("k2.mwis");
  c.starts = 0;
  EXPECT_THROW(cmd_solve(c, out, err), InputError);
  c = solve_config("k2.mwis");
  c.iterations = 1;
  EXPECT_THROW(cmd_solve(c, out, err), InputError);
  c = solve_config("k2.mwis");
  c.warm_starts = {data("refs.csv")};
  EXPECT_THROW(cmd_solve(c, out, err), InputError);
}

TEST(Verify, PathExamples) {
  std::ostringstream a, b, c;
  EXPECT_EQ(cmd_verify(data("p3.mwis"), data("p3_mid.sol"), 1.5, a), kSuccess);
  EXPECT_NE(a.str().find("independent: true\nmaximal: true\nweight: 3\n"), std::string::npos);
  EXPECT_EQ(cmd_verify(data("p3.mwis"), data("p3_conflict.sol"), 1.5, b), kInvalidSolution);
  EXPECT_NE(b.str().find("independent: false"), std::string::npos);
  EXPECT_EQ(cmd_verify(data("p3.mwis"), data("p3_first.sol"), 1.5, c), kInvalidSolution);
  EXPECT_NE(c.str().find("independent: true\nmaximal: false"), std::string::npos);
}

TEST(Atoms, Rows) {
  std::ostringstream five, six, empty;
  cmd_atoms({5, false, "", 1}, five);
  EXPECT_NE(five.str().find(" 5         21             1               1             1"
                            "               1       4"),
            std::string::npos)
      << five.str();
  cmd_atoms({6, false, "", 1}, six);
  EXPECT_NE(six.str().find("       112             2               6             3"
                           "               2      13"),
            std::string::npos)
      << six.str();
  cmd_atoms({0, false, data("empty.g6"), 1}, empty);
  EXPECT_NE(empty.str().find(" 0          0             0               0             0"
                             "               0       0"),
            std::string::npos)
      << empty.str();
  std::ostringstream all;
  cmd_atoms({4, true, "", 1}, all);
  std::istringstream table(all.str());
  std::size_t rows = 0;
  for (std::string l; std::getline(table, l);)
    if (l.size() > 1 && l[0] == ' ' && std::isdigit(static_cast<unsigned char>(l[1]))) ++rows;
  EXPECT_EQ(rows, 4u);
  EXPECT_THROW(cmd_atoms({8, false, "", 1}, all), InputError);
}

TEST(Oracle, K2Report) {
  std::ostringstream out;
  EXPECT_EQ(cmd_oracle(data("k2.mwis"), 1.5, 200, 0, out), kSuccess);
  EXPECT_NE(out.str().find("optimum {0} weight 4"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("violations: 0"), std::string::npos);
}

TEST(Bench, ToyDirectory) {
  auto dir = scratch("bench");
  RunConfig c;
  c.reference_csv = data("refs.csv");
  c.output = dir.string();
  c.no_timing = true;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_bench(c, data("bench"), out, err), kSuccess);
  const auto table = out.str();
  EXPECT_NE(table.find("k2"), std::string::npos);
  EXPECT_NE(table.find("0.00      0.00"), std::string::npos) << table;
  EXPECT_NE(table.find("summary: 2 instances, 1 with reference"), std::string::npos) << table;
  EXPECT_NE(err.str().find("p5: no reference objective"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "k2.json"));
  EXPECT_TRUE(fs::exists(dir / "p5.json"));
  auto p5 = parse_result(read_file((dir / "p5.json").string()));
  EXPECT_FALSE(p5.gap_percent);
  EXPECT_GT(p5.best_objective, 0.0);
  fs::remove_all(dir);
}

TEST(Bench, EmptyDirectory) {
  RunConfig c;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_bench(c, data("empty"), out, err), kSuccess);
  EXPECT_NE(out.str().find("summary: 0 instances"), std::string::npos);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("solve " + data("k2.mwis") + " --starts 2"), 0);
  EXPECT_EQ(run_binary("verify " + data("p3.mwis") + " " + data("p3_conflict.sol")), 1);
  EXPECT_EQ(run_binary("solve " + data("missing.mwis")), 2);
  EXPECT_EQ(run_binary("solve " + data("k2.mwis") + " --gamma0 -1"), 2);
  EXPECT_EQ(run_binary("atoms --n 9"), 2);
  EXPECT_EQ(run_binary("atoms --graph6 " + data("with_disconnected.g6")), 0);
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("frobnicate"), 2);
}

TEST(Binary, OutputFileMatchesStdout) {
  auto dir = scratch("out");
  const auto file = (dir / "r.json").string();
  ASSERT_EQ(run_binary("solve " + data("k2.mwis") + " --starts 3 --no-timing --output " + file), 0);
  const std::string cmd = std::string(GNMWIS_CLI) + " solve " + data("k2.mwis") +
                          " --starts 3 --no-timing --threads 1 > " + (dir / "s.json").string() +
                          " 2>/dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(read_file(file), read_file((dir / "s.json").string()));
  fs::remove_all(dir);
}
