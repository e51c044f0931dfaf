#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "sparsebench/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SPARSEBENCH_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sparsebench-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("gen writes a loadable instance and is deterministic") {
  TempDir tmp;
  const std::string out1 = tmp.file("a.json"), out2 = tmp.file("b.json");
  CHECK(run("gen --n 6 --p 16 --t 2 --seed 9 --out " + out1) == 0);
  CHECK(run("gen --n 6 --p 16 --t 2 --seed 9 --out " + out2) == 0);
  const std::string t1 = sparsebench::read_file(out1);
  CHECK(t1 == sparsebench::read_file(out2));
  const auto inst = sparsebench::instance_from_json(t1);
  CHECK(inst.n == 6);
  CHECK(inst.t == 2);
}

TEST_CASE("solve then certify round-trips through files") {
  TempDir tmp;
  const std::string inst = tmp.file("inst.json");
  const std::string sol = tmp.file("sol.json");
  REQUIRE(run("gen --n 8 --p 24 --t 2 --seed 4 --out " + inst) == 0);
  CHECK(run("solve --instance " + inst + " --solver simplex-ds2 --tol 1e-8 --out " + sol) == 0);
  CHECK(run("certify --instance " + inst + " --solution " + sol) == 0);
}

TEST_CASE("certify cross-checks a BPDN/DS pair") {
  TempDir tmp;
  const std::string inst = tmp.file("inst.json");
  const std::string bp = tmp.file("bp.json"), ds = tmp.file("ds.json");
  REQUIRE(run("gen --n 8 --p 24 --t 2 --seed 6 --lambda 0.05 --out " + inst) == 0);
  REQUIRE(run("solve --instance " + inst + " --solver greedy --out " + bp) == 0);
  REQUIRE(run("solve --instance " + inst + " --solver ipm-ds2 --out " + ds) == 0);
  CHECK(run("certify --instance " + inst + " --solution " + bp + " --solution2 " + ds) == 0);
}

TEST_CASE("certify rejects a non-optimal solution with exit code 3") {
  TempDir tmp;
  const std::string inst_path = tmp.file("inst.json");
  const std::string sol_path = tmp.file("sol.json");
  REQUIRE(run("gen --n 8 --p 24 --t 2 --seed 8 --out " + inst_path) == 0);
  const auto inst = sparsebench::instance_from_json(sparsebench::read_file(inst_path));
  sparsebench::Solution fake;
  fake.solver_name = "greedy";
  fake.beta.assign(inst.p, 0.1);  // nowhere near stationary
  fake.status = sparsebench::SolveStatus::ToleranceMet;
  sparsebench::finalize_solution(inst, fake);
  sparsebench::write_file(sol_path, sparsebench::solution_to_json(fake));
  CHECK(run("certify --instance " + inst_path + " --solution " + sol_path) == 3);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("solve --instance /nope.json --solver greedy") == 1);
  CHECK(run("solve") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("gen --n 4 --p 2 --t 1") == 1);  // p < n rejected by the generator
}

TEST_CASE("bench subcommand writes a parseable CSV") {
  TempDir tmp;
  const std::string suite = tmp.file("suite.json"), out = tmp.file("bench.csv");
  sparsebench::write_file(
      suite, R"({"sizes": [[6, 16, 2]], "solvers": ["greedy", "ipm-ds3"], "seeds": [1]})");
  CHECK(run("bench --suite " + suite + " --out " + out) == 0);
  const std::string csv = sparsebench::read_file(out);
  CHECK(csv.find("solver_name") != std::string::npos);
  CHECK(csv.find("greedy") != std::string::npos);
}

TEST_CASE("profile splits a solution file at the threshold") {
  TempDir tmp;
  const std::string inst = tmp.file("inst.json"), sol = tmp.file("sol.json");
  const std::string prof = tmp.file("prof.csv");
  REQUIRE(run("gen --n 8 --p 24 --t 2 --seed 14 --out " + inst) == 0);
  REQUIRE(run("solve --instance " + inst + " --solver greedy --out " + sol) == 0);
  CHECK(run("profile --solution " + sol + " --threshold 0.05 --out " + prof) == 0);
  const std::string text = sparsebench::read_file(prof);
  CHECK(text.find("# significant") != std::string::npos);
}

TEST_CASE("SPARSEBENCH_SEED env var sets the default seed") {
  TempDir tmp;
  const std::string a = tmp.file("a.json"), b = tmp.file("b.json");
  const std::string env = "SPARSEBENCH_SEED=42 ";
  const int rc1 = std::system((env + kCli + " gen --n 4 --p 8 --t 1 --out " + a +
                               " > /dev/null 2>&1").c_str());
  REQUIRE(WEXITSTATUS(rc1) == 0);
  REQUIRE(run("gen --n 4 --p 8 --t 1 --seed 42 --out " + b) == 0);
  CHECK(sparsebench::read_file(a) == sparsebench::read_file(b));
}
