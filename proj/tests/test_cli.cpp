#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef EIKGRAPH_BIN
#define EIKGRAPH_BIN "eikgraph"
#endif

namespace {

int run_cmd(const std::string& args) {
  const std::string cmd = std::string(EIKGRAPH_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve: coarse scenario exits 0 and writes the solution CSV") {
  namespace fs = std::filesystem;
  fs::remove_all("cli_out");
  CHECK(run_cmd("solve --scenario interval_sqrt --h 0.01 --out cli_out") == 0);
  REQUIRE(fs::exists("cli_out/interval_sqrt_solution.csv"));
  // u(0) ~ 2 in the written artifact
  std::ifstream in("cli_out/interval_sqrt_solution.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "vertex_id,x,y,u,in_sigma_g");
  bool found_origin = false;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string id, x, y, u;
    std::getline(ss, id, ',');
    std::getline(ss, x, ',');
    std::getline(ss, y, ',');
    std::getline(ss, u, ',');
    if (std::abs(std::stod(x)) < 1e-12) {
      found_origin = true;
      CHECK(std::abs(std::stod(u) - 2.0) < 5e-3);
    }
  }
  CHECK(found_origin);
  fs::remove_all("cli_out");
}

TEST_CASE("unknown scenario exits 2; bad flags exit 2") {
  CHECK(run_cmd("solve --scenario does_not_exist") == 2);
  CHECK(run_cmd("frobnicate") == 2);
  CHECK(run_cmd("solve --file /nonexistent/path.json") == 2);
}

TEST_CASE("verify and scenario commands exit 0 on healthy inputs") {
  CHECK(run_cmd("verify --scenario interval_loss --h 0.02 --out cli_out_v") == 0);
  CHECK(run_cmd("scenario --scenario comb --h 0.033333 --out cli_out_v") == 0);
  CHECK(run_cmd("transversal --scenario blocked_square --h 0.1 --out cli_out_v") == 0);
  CHECK(run_cmd("regularity --scenario interval_sqrt --h 0.005 --out cli_out_v") == 0);
  std::filesystem::remove_all("cli_out_v");
}

TEST_CASE("convergence table decreases and exits 0") {
  CHECK(run_cmd("convergence --h-list 0.1,0.02 --m-list 10,100 --h 0.02 --out cli_out_c") == 0);
  std::filesystem::remove_all("cli_out_c");
}

TEST_CASE("deterministic artifacts: identical runs produce identical bytes") {
  namespace fs = std::filesystem;
  CHECK(run_cmd("solve --scenario comb --h 0.05 --seed 7 --out cli_det_a") == 0);
  CHECK(run_cmd("solve --scenario comb --h 0.05 --seed 7 --out cli_det_b") == 0);
  CHECK(slurp("cli_det_a/comb_solution.csv") == slurp("cli_det_b/comb_solution.csv"));
  CHECK(slurp("cli_det_a/comb_pairs.csv") == slurp("cli_det_b/comb_pairs.csv"));
  // reports differ only in the wall-clock line
  const auto strip_runtime = [](std::string s) {
    const auto pos = s.find("\"runtime_seconds\"");
    if (pos == std::string::npos) return s;
    const auto end = s.find('\n', pos);
    return s.erase(pos, end - pos);
  };
  CHECK(strip_runtime(slurp("cli_det_a/comb_report.json")) ==
        strip_runtime(slurp("cli_det_b/comb_report.json")));
  fs::remove_all("cli_det_a");
  fs::remove_all("cli_det_b");
}

TEST_CASE("scenario file through the CLI, including a parse failure") {
  {
    std::ofstream out("cli_scenario.json");
    out << R"({
      "name": "file_case",
      "graph": {"grid": {"domain": {"shape": "interval", "min": 0.0, "max": 1.0}, "h": 0.1, "stencil": 4}},
      "f": {"kind": "expression", "formula": "1 + x", "alpha": 1.0},
      "g": [{"vertex": 0, "value": 0.0}]
    })";
  }
  CHECK(run_cmd("solve --file cli_scenario.json --out cli_file_out") == 0);
  std::filesystem::remove_all("cli_file_out");

  {
    std::ofstream out("cli_scenario.json");
    out << R"({"name": "broken", "graph": {"vertices": []}, "f": {"kind": "builtin", "name": "one"}})";
  }
  CHECK(run_cmd("solve --file cli_scenario.json") == 2);
  std::remove("cli_scenario.json");
}
