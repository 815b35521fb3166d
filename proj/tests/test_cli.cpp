#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "schro/branches.hpp"
#include "schro/io.hpp"

using namespace schro;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SCHRO_BIN) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("definitely-not-a-command >/dev/null 2>&1") == 2);
  CHECK(run("branch --dim 1 >/dev/null 2>&1") == 2);
  CHECK(run("spectrum --dim 1 --kappa 0 --count 2 --out cli_s.json --bogus 1 "
            ">/dev/null 2>&1") == 2);
  CHECK(run("ground-state --dim 4 --out cli_o.csv >/dev/null 2>&1") == 2);
  CHECK(run("--help >/dev/null 2>&1") == 0);
}

TEST_CASE("ground-state artifacts") {
  REQUIRE(run("ground-state --dim 1 --nodes 1501 --out cli_omega.csv "
              ">/dev/null 2>&1") == 0);
  const std::string csv = slurp("cli_omega.csv");
  CHECK(csv.rfind("r,value\n", 0) == 0);

  const std::string side = slurp("cli_omega.csv.json");
  CHECK(side.find("\"center_value\":1.414219") != std::string::npos);
  CHECK(side.find("\"dim\":1") != std::string::npos);
  CHECK(side.find("\"R\":15") != std::string::npos);
}

TEST_CASE("byte identical reruns") {
  REQUIRE(run("spectrum --dim 1 --kappa -0.5 --count 3 --nodes 1501 "
              "--out cli_a.json >/dev/null 2>&1") == 0);
  REQUIRE(run("spectrum --dim 1 --kappa -0.5 --count 3 --nodes 1501 "
              "--out cli_b.json >/dev/null 2>&1") == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));

  REQUIRE(run("region-map --mu1 1 --mu2 1 --grid 20x20 --out cli_r1.csv "
              ">/dev/null 2>&1") == 0);
  REQUIRE(run("region-map --mu1 1 --mu2 1 --grid 20x20 --out cli_r2.csv "
              ">/dev/null 2>&1") == 0);
  CHECK(slurp("cli_r1.csv") == slurp("cli_r2.csv"));
}

TEST_CASE("region map rows and corner probes") {
  REQUIRE(run("region-map --mu1 1 --mu2 1 --grid 5x5 --out cli_region.csv "
              ">/dev/null 2>&1") == 0);
  const std::string csv = slurp("cli_region.csv");
  CHECK(csv.rfind("kappa,beta,verdict\n", 0) == 0);

  int rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == 26);  // header + 5x5

  CHECK(csv.find("-2,0,NoPositiveSolution") != std::string::npos);
  CHECK(csv.find("-1,1,NoPositiveSolution") != std::string::npos);
  CHECK(csv.find("0,1,ExistsSymmetric") != std::string::npos);
  CHECK(csv.find("-1,-1,Unknown") != std::string::npos);
}

TEST_CASE("branch CSV header") {
  REQUIRE(run("branch --dim 1 --beta -0.5 --j 1 --step 0.02 --max-points 12 "
              "--cutoff --out cli_branch.csv >/dev/null 2>&1") == 0);
  const std::string csv = slurp("cli_branch.csv");
  CHECK(csv.rfind("arclength,kappa,l2_u,l2_v,asymmetry,energy,positive,residual\n",
                  0) == 0);
}

TEST_CASE("config file with command-line override") {
  {
    std::ofstream cfg("cli_cfg.ini");
    cfg << "[spectrum]\n"
        << "dim=1\n"
        << "kappa=-0.5\n"
        << "count=2\n"
        << "nodes=1501\n"
        << "out=cli_cfg_out.json\n";
  }
  REQUIRE(run("spectrum --config cli_cfg.ini >/dev/null 2>&1") == 0);
  CHECK(slurp("cli_cfg_out.json").find("\"j\":2") != std::string::npos);

  // flags override the file
  REQUIRE(run("spectrum --config cli_cfg.ini --count 3 --out cli_cfg_out3.json "
              ">/dev/null 2>&1") == 0);
  CHECK(slurp("cli_cfg_out3.json").find("\"j\":3") != std::string::npos);
}

TEST_CASE("runs.log accumulates JSON lines") {
  REQUIRE(run("region-map --mu1 1 --mu2 2 --grid 5x5 --out cli_log_probe.csv "
              ">/dev/null 2>&1") == 0);
  const std::string log = slurp("runs.log");
  CHECK(log.find("\"command\":\"region-map\"") != std::string::npos);
  CHECK(log.find("\"digest\":\"") != std::string::npos);
  CHECK(log.find("\"wall_time_s\":") != std::string::npos);
}

TEST_CASE("numeric formatting round-trips") {
  CHECK(format_full(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_full(16.0 / 3.0)) == 16.0 / 3.0);
}
