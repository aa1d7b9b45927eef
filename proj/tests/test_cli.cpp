#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jacobidet");
  std::ostringstream out, err;
  Outcome o;
  o.code = jacobidet::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

// Runs the installed executable through the shell and returns its exit code.
int exit_code_of(const std::string& args) {
  const std::string cmd = std::string(JACOBIDET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, DetPrintsTheoremValue) {
  auto o = run_cli({"det", "--q", "5", "--k", "1"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "16\n");
}

TEST(Cli, DetJson) {
  auto o = run_cli({"det", "--q", "7", "--k", "2", "--format", "json"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("\"6\""), std::string::npos);
}

TEST(Cli, DetEachMethod) {
  for (std::string m : {"bareiss", "crt"}) {
    auto o = run_cli({"det", "--q", "13", "--k", "2", "--method", m});
    EXPECT_EQ(o.code, 0) << m;
    EXPECT_EQ(o.out, "-3888\n") << m;
  }
  auto f = run_cli({"det", "--q", "4", "--k", "1", "--method", "float"});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.out, "3\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"det", "--q", "10", "--k", "1"}).code, 2);
  EXPECT_EQ(run_cli({"det", "--q", "7", "--k", "4"}).code, 2);
  EXPECT_EQ(run_cli({"det", "--q", "7", "--k", "1", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"verify"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  auto o = run_cli({"det", "--q", "10", "--k", "1"});
  EXPECT_EQ(std::count(o.err.begin(), o.err.end(), '\n'), 1);
}

TEST(Cli, VerifyDetJ1AllPass) {
  auto o = run_cli({"verify", "--q-max", "9", "--suite", "detJ1"});
  EXPECT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::set<int> qs;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    if (j["status"] == "skipped") continue;
    EXPECT_EQ(j["status"], "pass") << line;
    qs.insert(j["params"]["q"].get<int>());
  }
  EXPECT_EQ(qs, (std::set<int>{3, 4, 5, 7, 8, 9}));
}

TEST(Cli, VerifyIsDeterministicAcrossJobs) {
  auto a = run_cli({"verify", "--q-max", "11", "--suite", "all", "--jobs", "1"});
  auto b = run_cli({"verify", "--q-max", "11", "--suite", "all", "--jobs", "3"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(Cli, VerifyTable) {
  auto o = run_cli({"verify", "--q-max", "7", "--suite", "thm1", "--format", "table"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("TOTAL"), std::string::npos);
}

TEST(Cli, Jacobi) {
  auto o = run_cli({"jacobi", "--q", "5", "--i", "1", "--j", "1"});
  EXPECT_EQ(o.code, 0);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["value"]["coeffs"], nlohmann::json({"-1", "-2"}));
  EXPECT_NEAR(j["approx"]["re"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(j["approx"]["im"].get<double>(), -2.0, 1e-12);
}

TEST(Cli, TableWritesCsvAndCache) {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() / ("jacobidet-cli-" + std::to_string(rd()));
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "t.csv").string();
  const auto cache = (dir / "c.jsonl").string();
  auto o = run_cli({"table", "--q-max", "9", "--out", csv, "--cache", cache});
  EXPECT_EQ(o.code, 0) << o.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "q,k,m,det,factorization,congruence_ok");
  EXPECT_TRUE(std::filesystem::exists(cache));
  auto again = run_cli({"table", "--q-max", "9", "--out", csv, "--cache", cache});
  EXPECT_EQ(again.code, 0);
  auto g = run_cli({"table", "--q-max", "5", "--greene", "--out", csv, "--no-cache"});
  EXPECT_EQ(g.code, 0) << g.err;
  std::filesystem::remove_all(dir);
}

TEST(Cli, Selftest) {
  auto o = run_cli({"selftest"});
  EXPECT_EQ(o.code, 0) << o.err;
}

TEST(CliProcess, ExitCodes) {
  EXPECT_EQ(exit_code_of("det --q 5 --k 1"), 0);
  EXPECT_EQ(exit_code_of("det --q 10 --k 1"), 2);
  EXPECT_EQ(exit_code_of("det --q 5 --k 3"), 2);
  EXPECT_EQ(exit_code_of("nonsense"), 2);
  EXPECT_EQ(exit_code_of("verify --q-max 9 --suite detJ1"), 0);
  EXPECT_EQ(exit_code_of("--help"), 0);
  // The stated det M_q sign form fails at q = 3, so this exercises exit 1.
  EXPECT_EQ(exit_code_of("verify --q-max 3 --suite apparatus"), 1);
}
