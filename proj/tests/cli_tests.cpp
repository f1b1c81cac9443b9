// End-to-end checks of the deadline-bcast binary: flag handling, output
// formats, exit codes and byte-stability. The binary path comes from the
// build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef DEADLINE_BCAST_CLI
#error "DEADLINE_BCAST_CLI must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(DEADLINE_BCAST_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("outage: single point prints the JSON result") {
  const RunResult r =
      run_cli("outage --t1 1 --t2 1 --lambda1 1 --lambda2 0 --eps 0.1,0.2,0.2,0.5 --method exact");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["value"].get<double>() == doctest::Approx(0.3));
  CHECK(j["method"] == "exact");
  CHECK(j["config"]["t1"] == 1);
}

TEST_CASE("outage: seeded Monte Carlo sweeps are byte-stable") {
  const std::string args =
      "outage --sweep-lambda 0:2:0.5 --t1 4 --t2 4 --eps 0.1,0.2,0.2,0.5 "
      "--method mc --trials 20000 --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("# deadline-bcast v") == 0);
  CHECK(a.output.find("generator=mt19937_64 seed=7") != std::string::npos);
  CHECK(a.output.find("t1,t2,lambda1,lambda2,eps00,eps01,eps10,eps11,pout,method,trials,seed,"
                      "stderr") != std::string::npos);
  CHECK(count_lines(a.output) == 2 + 5);  // meta + header + one row per lambda
}

TEST_CASE("outage: exact sweep rows leave the Monte Carlo fields empty") {
  const RunResult r = run_cli(
      "outage --sweep-t 1:3 --lambda1 1 --lambda2 0 --eps 0.1,0.2,0.2,0.5 --method exact");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("generator=none seed=none") != std::string::npos);
  CHECK(r.output.find("1,1,1,0,0.1,0.2,0.2,0.5,0.3,exact,,,\n") != std::string::npos);
}

TEST_CASE("outage: the brute-force method is exposed and agrees") {
  const RunResult r = run_cli(
      "outage --t1 1 --t2 1 --lambda1 1 --lambda2 0 --eps 0.1,0.2,0.2,0.5 --method bruteforce");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["value"].get<double>() == doctest::Approx(0.3));
  CHECK(j["method"] == "bruteforce");
}

TEST_CASE("outage: guard violations exit 3, bad flags exit 2") {
  CHECK(run_cli("outage --t1 13 --t2 13 --lambda1 1 --lambda2 1 --eps 0.1,0.2,0.2,0.5").exit_code ==
        3);
  CHECK(run_cli("outage --t1 11 --t2 11 --lambda1 1 --lambda2 1 --eps 0.1,0.2,0.2,0.5 "
                "--method bruteforce").exit_code == 3);
  CHECK(run_cli("outage --t1 2 --t2 2 --lambda1 1 --lambda2 1 --eps 0.1,0.2,0.2,0.5 "
                "--method banana").exit_code == 2);
  CHECK(run_cli("outage --t1 2 --t2 2 --lambda1 1 --lambda2 1 --eps 0.5,0.5").exit_code == 2);
  CHECK(run_cli("outage --unknown-flag 1").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("outage: --p maps the iid erasure probability onto eps") {
  const RunResult r = run_cli("outage --t1 1 --t2 1 --lambda1 1 --lambda2 0 --p 0.3");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  // outage = Pr[user 1 erased] = 0.3 regardless of the factorization
  CHECK(j["value"].get<double>() == doctest::Approx(0.3));
  CHECK(j["eps"]["eps00"].get<double>() == doctest::Approx(0.09));
}

TEST_CASE("outage: JSON config files merge under explicit flags") {
  const std::string path = "/tmp/dbc_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"t1": 1, "t2": 1, "lambda1": 0, "lambda2": 0,
             "eps": "0.1,0.2,0.2,0.5", "method": "exact"})";
  }
  const RunResult from_config = run_cli("outage --config " + path);
  REQUIRE(from_config.exit_code == 0);
  CHECK(nlohmann::json::parse(from_config.output)["value"].get<double>() == doctest::Approx(0.0));

  // the command line overrides the file
  const RunResult overridden = run_cli("outage --config " + path + " --lambda1 1");
  REQUIRE(overridden.exit_code == 0);
  CHECK(nlohmann::json::parse(overridden.output)["value"].get<double>() == doctest::Approx(0.3));

  {
    std::ofstream f(path);
    f << R"({"t1": "not a number"})";
  }
  CHECK(run_cli("outage --config " + path).exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("region: vertex lists for known patterns") {
  const RunResult ones = run_cli("region --pattern 11,11,11 --t1 3");
  REQUIRE(ones.exit_code == 0);
  CHECK(ones.output.find("lambda1,lambda2\n0,0\n0,3\n3,0\n") != std::string::npos);

  const RunResult zeros = run_cli("region --pattern 00,00,00 --t1 3");
  REQUIRE(zeros.exit_code == 0);
  CHECK(zeros.output.find("lambda1,lambda2\n0,0\n") != std::string::npos);
  CHECK(count_lines(zeros.output) == 3);

  const RunResult mixed = run_cli("region --pattern 01,10,11 --t1 3");
  REQUIRE(mixed.exit_code == 0);
  CHECK(mixed.output.find("0,2\n1,2\n2,1\n2,0\n") != std::string::npos);

  CHECK(run_cli("region --pattern 01,1x --t1 2").exit_code == 2);
  CHECK(run_cli("region --pattern 01,10,11 --t1 2").exit_code == 2);
}

TEST_CASE("schedule: greedy trace for the two-block example") {
  const RunResult r = run_cli(
      "schedule --pattern 10,11,00,01,11,10 --t1 3 --t2 6 --lambda1 1 --lambda2 2 "
      "--policy greedy_full");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("slot=1 state=10 action=serve1 amt1=1 amt2=0\n") != std::string::npos);
  CHECK(r.output.find("slot=2 state=11 action=serve2 amt1=0 amt2=1\n") != std::string::npos);
  CHECK(r.output.find("slot=6 state=10 action=serve1 amt1=1 amt2=0\n") != std::string::npos);
  CHECK(r.output.find("met_deadlines=true") != std::string::npos);
}

TEST_CASE("schedule: causal policies need eps and equal deadlines") {
  CHECK(run_cli("schedule --pattern 11,01 --lambda1 1 --lambda2 1 --policy current_csi "
                "--eps 0.1,0.2,0.2,0.5").exit_code == 0);
  CHECK(run_cli("schedule --pattern 11,01 --lambda1 1 --lambda2 1 --policy current_csi").exit_code ==
        2);
  CHECK(run_cli("schedule --pattern 11,01,00,10 --t1 2 --t2 4 --lambda1 1 --lambda2 1 "
                "--policy current_csi --eps 0.1,0.2,0.2,0.5").exit_code == 2);
}

TEST_CASE("rate-solve: JSON result on the unit ray") {
  const RunResult r =
      run_cli("rate-solve --t1 4 --t2 4 --eps 0.1,0.2,0.2,0.5 --target-p 0.1 --m 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["lambda2"].get<double>() == doctest::Approx(1.0));
  CHECK(j["lambda1"].get<double>() == doctest::Approx(1.0));
  CHECK(j["pout"].get<double>() == doctest::Approx(0.0181));
  CHECK(j["zero_rate"] == false);
}

TEST_CASE("policy-compare: ordered CSV across the deadline sweep") {
  const RunResult r = run_cli(
      "policy-compare --sweep-t 2:4 --lambda1 1 --lambda2 1 --eps 0.1,0.2,0.2,0.5 "
      "--trials 20000 --seed 5 --out /tmp/dbc_test_compare.csv");
  REQUIRE(r.exit_code == 0);
  std::ifstream csv("/tmp/dbc_test_compare.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line.find("# deadline-bcast v") == 0);
  std::getline(csv, line);
  CHECK(line ==
        "t,lambda1,lambda2,pout_full,pout_current,stderr_current,pout_past,stderr_past,trials,"
        "seed");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 3);
  std::remove("/tmp/dbc_test_compare.csv");
}

TEST_CASE("validate --quick passes") {
  const RunResult r = run_cli("validate --quick");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("all checks passed") != std::string::npos);
  CHECK(r.output.find("1-oracle-equivalence") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}
