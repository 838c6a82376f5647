// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MER_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("check --no-such-flag").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("region --out /nonexistent-dir/x.csv --ps-db 10 --rho 0.5 --ns 2").exit_code == 2);
}

TEST_CASE("check exit codes follow the decision") {
  CHECK(run_cli("check --ps-db 10 --pr-db 10 --rho 0.5 --ns 2 --nr 2").exit_code == 0);
  CHECK(run_cli("check --ps-db 10 --pr-db 20 --rho 0.5 --ns 2 --nr 2").exit_code == 1);
  // a silent source degenerates the threshold rearrangement
  CHECK(run_cli("check --ps-db -inf --pr-db 10 --rho 0.5 --ns 2 --nr 2").exit_code == 3);
  CHECK(run_cli("check --ps-db 10 --pr-db 10 --rho 0.999 --ns 2").exit_code == 0);
}

TEST_CASE("check --verify reports an agreeing finite-difference margin") {
  const auto r = run_cli(
      "check --ps-db 10 --pr-db 10 --rho 0.5 --ns 2 --verify --samples 100000");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("fd_derivative") != std::string::npos);
  CHECK(r.out.find("agrees") != std::string::npos);
  CHECK(r.out.find("DISAGREES") == std::string::npos);
}

TEST_CASE("check --json round-trips through the documented schema") {
  const auto r = run_cli(
      "check --ps-db 10 --pr-db 10 --rho 0.5 --ns 2 --json --verify "
      "--samples 50000");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key :
       {"p_s_db", "p_r_db", "rho", "n_s", "n_r", "total_eigen_gain",
        "margin_exact", "threshold_exact", "lhs_lambda2sq", "decision",
        "exact_optimal", "exact_degenerate", "jensen", "large_ns", "d",
        "e_inv_z", "e_gy_over_z", "verify"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["decision"] == "optimal");
  CHECK(j["jensen"].contains("certifies"));
  CHECK(j["large_ns"].contains("threshold"));
  CHECK(j["verify"]["agrees"] == true);
  // round trip: parse(dump(parse(x))) is identical
  const auto again = nlohmann::json::parse(j.dump());
  CHECK(again == j);
}

TEST_CASE("region CSV schema and correlation monotonicity") {
  const auto r =
      run_cli("region --ps-db 0:20:5 --pr-db -40:60 --rho 0.3,0.5 --ns 2 --nr 2");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 5 * 2);
  REQUIRE(rows[0] ==
          std::vector<std::string>{"p_s_db", "rho", "n_s",
                                   "p_r_boundary_exact_db",
                                   "p_r_boundary_large_ns_db",
                                   "p_r_boundary_jensen_db"});
  // rows come in (ps, rho) order; within each ps the 0.5 boundary is higher
  for (std::size_t i = 1; i < rows.size(); i += 2) {
    const double b03 = std::stod(rows[i][3]);
    const double b05 = std::stod(rows[i + 1][3]);
    CHECK(b05 > b03);
  }
}

TEST_CASE("curve CSV schema, determinism and --bits scaling") {
  const std::string args =
      "curve --ps-db 10 --pr-db 8:12:2 --rho 0.5 --ns 2 --samples 4000 --seed 9";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // identical bytes under a fixed seed

  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 1 + 3);
  REQUIRE(rows[0] == std::vector<std::string>{"p_r_db", "rho", "cap_mer_nats",
                                              "cap_mer_se", "cap_opt_nats",
                                              "cap_opt_se", "mer_optimal"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK((rows[i][6] == "0" || rows[i][6] == "1"));
  }

  const auto bits = run_cli(args + " --bits");
  const auto brows = parse_csv(bits.out);
  const double ratio = std::stod(rows[1][2]) / std::stod(brows[1][2]);
  CHECK(ratio == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("config file values are used and flags override them") {
  const std::string path = std::string(MER_TEST_TMPDIR) + "/check.cfg";
  {
    std::ofstream f(path);
    f << "ps-db=10\npr-db=20\nrho=0.5\nns=2\nnr=2\n";
  }
  CHECK(run_cli("check --config " + path).exit_code == 1);
  CHECK(run_cli("check --config " + path + " --pr-db 10").exit_code == 0);
}

TEST_CASE("optimize prints a deterministic converged report") {
  const std::string args =
      "optimize --ps-db 10 --pr-db 19 --rho 0.5 --ns 2 --samples 20000 --seed 3";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("alpha:") != std::string::npos);
  CHECK(a.out.find("converged:     true") != std::string::npos);

  // deep inside the optimality region the search stays on the top mode
  const auto deep = run_cli(
      "optimize --ps-db 10 --pr-db 0 --rho 0.8 --ns 2 --samples 20000 --seed 3");
  CHECK(deep.exit_code == 0);
  const auto pos = deep.out.find("alpha:         ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(deep.out.substr(pos + 15)) >= 0.99);
}
