// End-to-end checks of the leasematch binary: output schema, manifest
// reruns, exit codes, and the pair trace.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

int counter = 0;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("leasematch_cli_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path log = scratch_dir() / "out.txt";
  const std::string command =
      std::string(LEASEMATCH_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("sweep writes a schema-stable csv") {
  const fs::path dir = scratch_dir();
  const RunResult run = run_cli("sweep --drops 4 --n-values 5,10 --out-dir " +
                                dir.string());
  REQUIRE(run.exit_code == 0);
  const std::string csv = slurp(dir / "results.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "scheme,n,metric,mean,stderr,drops,seed");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3 * 2 * 6);  // schemes x n-values x metrics
}

TEST_CASE("rerunning from the manifest reproduces the csv byte for byte") {
  const fs::path first = scratch_dir();
  const fs::path second = scratch_dir();
  REQUIRE(run_cli("sweep --drops 4 --n-values 5,10 --seed 77 --out-dir " +
                  first.string())
              .exit_code == 0);
  REQUIRE(run_cli("sweep " + (first / "manifest.txt").string() + " --out-dir " +
                  second.string())
              .exit_code == 0);
  CHECK(slurp(first / "results.csv") == slurp(second / "results.csv"));
}

TEST_CASE("serial and parallel sweeps write identical bytes") {
  const fs::path serial = scratch_dir();
  const fs::path parallel = scratch_dir();
  REQUIRE(run_cli("sweep --drops 8 --n-values 5 --scheme proposed --threads 1 "
                  "--out-dir " +
                  serial.string())
              .exit_code == 0);
  REQUIRE(run_cli("sweep --drops 8 --n-values 5 --scheme proposed --threads 4 "
                  "--out-dir " +
                  parallel.string())
              .exit_code == 0);
  CHECK(slurp(serial / "results.csv") == slurp(parallel / "results.csv"));
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli("sweep --definitely-not-a-flag").exit_code == 1);

  const fs::path dir = scratch_dir();
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "sim.drops = 2\nnot a key value line\n";
  const RunResult run = run_cli("sweep " + bad.string());
  CHECK(run.exit_code == 2);
  CHECK(run.output.find("line 2") != std::string::npos);

  const RunResult perturbed = run_cli("verify --instances 10 --perturb-alpha 0.02");
  CHECK(perturbed.exit_code == 3);
  CHECK(perturbed.output.find("FAIL") != std::string::npos);
  // failing instances are dumped for inspection
  CHECK(perturbed.output.find("coop_rate=") != std::string::npos);
}

TEST_CASE("verify passes on a modest sample") {
  const RunResult run = run_cli("verify --instances 50");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("verification passed") != std::string::npos);
}

TEST_CASE("pair trace logs proposals and the final matching") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "tiny.cfg";
  std::ofstream(cfg) << "sim.M = 3\nsim.N_values = 3\n";
  const RunResult run =
      run_cli("pair " + cfg.string() + " --drop 2 --dump-preferences");
  REQUIRE(run.exit_code == 0);
  CHECK(run.output.find("pairs (ceu, d2d)") != std::string::npos);
  CHECK(run.output.find("prefs ceu 0:") != std::string::npos);
  CHECK(run.output.find("prefs d2d 0:") != std::string::npos);
  // every CEU ends up accounted for
  CHECK(run.output.find("ceu 0") != std::string::npos);
  CHECK(run.output.find("ceu 1") != std::string::npos);
  CHECK(run.output.find("ceu 2") != std::string::npos);
}

TEST_CASE("an all-infeasible drop traces empty tables and no matches") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "dead.cfg";
  // requirement far above anything the channel can deliver
  std::ofstream(cfg) << "sim.M = 2\nsim.N_values = 2\ngame.R_th = 500\n"
                     << "sim.condition_outage = false\n";
  const RunResult run = run_cli("pair " + cfg.string() + " --dump-preferences");
  REQUIRE(run.exit_code == 0);
  CHECK(run.output.find("pair 0 0: 0") != std::string::npos);
  CHECK(run.output.find("<->") == std::string::npos);  // nobody got matched
  CHECK(run.output.find("unmatched ceu 0") != std::string::npos);
  CHECK(run.output.find("unmatched ceu 1") != std::string::npos);
}
