// Command-line front end: instance generation, solving, certification,
// benchmarking and solution profiling.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsebench/bench.hpp"
#include "sparsebench/certify.hpp"
#include "sparsebench/json_io.hpp"

using namespace sparsebench;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitCertFail = 3;

uint64_t default_seed() {
  if (const char* env = std::getenv("SPARSEBENCH_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

bool is_bpdn_solver(const std::string& name) {
  return name == "greedy" || name == "ipm-ds3";
}

void write_or_print(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text);
}

int cmd_gen(int n, int p, int t, double sigma, double lambda, uint64_t seed,
            const std::string& out_path) {
  const ProblemInstance inst = generate_instance(n, p, t, sigma, lambda, seed);
  if (!out_path.empty()) write_file(out_path, instance_to_json(inst));
  const Vector xty = matvec_transpose(inst.x, inst.y);
  std::printf("n=%d p=%d T=%d max|X'y|=%.6g\n", inst.n, inst.p, inst.t, norm_inf(xty));
  return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& solver, double tol,
              int max_iters, std::optional<int> fixed_iters, const std::string& pricing,
              const std::string& out_path) {
  const ProblemInstance inst = instance_from_json(read_file(instance_path));
  SolverRunOptions opts;
  opts.tol = tol;
  opts.max_iters = max_iters;
  opts.fixed_iters = fixed_iters;
  opts.pricing = pricing == "steepest-edge" ? Pricing::SteepestEdge : Pricing::Dantzig;
  const Solution sol = run_named_solver(inst, solver, opts);
  write_or_print(out_path, solution_to_json(sol));
  std::fprintf(stderr, "%s: %s in %d iterations, objective %.10g\n", solver.c_str(),
               to_string(sol.status).c_str(), sol.iterations, sol.objective);
  const bool ok =
      sol.status == SolveStatus::Converged || sol.status == SolveStatus::ToleranceMet;
  return ok ? kExitOk : kExitNoConverge;
}

// Single-solution mode: gap/KKT checks for the solution's model family.
// Two-solution mode: additionally verifies the BPDN/DS structural
// relations between the pair.
int cmd_certify(const std::string& instance_path, const std::string& solution_path,
                const std::string& solution2_path) {
  const ProblemInstance inst = instance_from_json(read_file(instance_path));

  auto certify_one = [&](const Solution& sol, json& out) {
    const double scale = 1e-6 * (1.0 + std::abs(sol.objective));
    bool ok = true;
    out["solver"] = sol.solver_name;
    out["objective"] = sol.objective;
    if (is_bpdn_solver(sol.solver_name)) {
      out["family"] = "bpdn";
      const double kkt = bpdn_kkt_residual(inst, sol.beta, inst.lambda);
      out["bpdn_kkt"] = kkt;
      ok = ok && kkt <= 1e-6;
      if (!sol.r.empty()) {
        try {
          const double gap = bpdn_gap(inst, sol.beta, sol.r);
          out["bpdn_gap"] = gap;
          ok = ok && gap <= scale;
        } catch (const std::exception& e) {
          out["bpdn_gap_error"] = e.what();
          ok = false;
        }
      }
    } else {
      out["family"] = "ds";
      const double viol = ds_feasibility_violation(inst, sol.beta);
      out["ds_violation"] = viol;
      ok = ok && viol <= 1e-6 * (1.0 + inst.lambda);
      if (sol.has_cert()) {
        try {
          const double gap = ds_gap(inst, sol.beta, sol.cert);
          out["ds_gap"] = gap;
          ok = ok && gap <= scale;
        } catch (const std::exception& e) {
          out["ds_gap_error"] = e.what();
          ok = false;
        }
      } else {
        out["ds_gap_error"] = "no dual certificate in solution";
        ok = false;
      }
    }
    out["ok"] = ok;
    return ok;
  };

  const Solution sol1 = solution_from_json(read_file(solution_path));
  json report;
  bool all_ok = certify_one(sol1, report["solution"]);

  if (!solution2_path.empty()) {
    const Solution sol2 = solution_from_json(read_file(solution2_path));
    all_ok = certify_one(sol2, report["solution2"]) && all_ok;
    const bool first_is_bpdn = is_bpdn_solver(sol1.solver_name);
    const bool second_is_bpdn = is_bpdn_solver(sol2.solver_name);
    if (first_is_bpdn == second_is_bpdn) {
      report["cross_check_error"] = "need one bpdn-family and one ds-family solution";
      all_ok = false;
    } else {
      const Solution& bp = first_is_bpdn ? sol1 : sol2;
      const Solution& ds = first_is_bpdn ? sol2 : sol1;
      const CrossCheckReport cc = cross_check(inst, bp, ds);
      report["cross_check"] = {{"bpdn_ds_violation", cc.bpdn_ds_violation},
                               {"l1_margin", cc.l1_margin},
                               {"r2_margin", cc.r2_margin},
                               {"ok", cc.ok}};
      all_ok = all_ok && cc.ok;
    }
  }
  report["ok"] = all_ok;
  std::cout << report.dump(2) << "\n";
  return all_ok ? kExitOk : kExitCertFail;
}

int cmd_bench(const std::string& suite, const std::string& out_path,
              const std::string& format, int jobs) {
  SuiteSpec spec;
  if (suite == "table1" || suite == "table2")
    spec = suite_preset(suite);
  else
    spec = suite_from_json(read_file(suite));
  if (jobs > 0) spec.jobs = jobs;
  const std::vector<BenchRecord> records = run_suite(spec);
  std::string text;
  if (format == "csv")
    text = emit_table(records, TableFormat::Csv);
  else if (format == "markdown")
    text = emit_table(records, TableFormat::Markdown);
  else if (format == "jsonl")
    text = records_to_jsonl(records);
  else
    throw CLI::ValidationError("--format", "expected csv, markdown or jsonl");
  write_or_print(out_path, text);
  return kExitOk;
}

int cmd_profile(const std::string& solution_path, double threshold,
                const std::string& out_path) {
  const Solution sol = solution_from_json(read_file(solution_path));
  write_or_print(out_path, emit_profile(sol, threshold));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l1 sparse-recovery solver suite"};
  app.require_subcommand(1);

  int n = 0, p = 0, t = 0;
  double sigma = 0.005, lambda = 3e-3;
  uint64_t seed = default_seed();
  std::string out_path, instance_path, solution_path, solution2_path;
  std::string solver, pricing = "dantzig", suite, format = "csv";
  double tol = 1e-8, threshold = 0.05;
  int max_iters = 0, jobs = 1;
  std::optional<int> fixed_iters;
  int fixed_iters_flag = -1;

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", n, "rows of X")->required();
  gen->add_option("--p", p, "columns of X")->required();
  gen->add_option("--t", t, "true support size")->required();
  gen->add_option("--sigma", sigma, "noise level");
  gen->add_option("--lambda", lambda, "regularization parameter");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "instance file to write");

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--solver", solver, "ipm-ds | ipm-ds1 | ipm-ds2 | ipm-ds3 | greedy | simplex-ds2")
      ->required()
      ->check(CLI::IsMember(
          {"ipm-ds", "ipm-ds1", "ipm-ds2", "ipm-ds3", "greedy", "simplex-ds2"}));
  solve->add_option("--tol", tol, "convergence / dual-feasibility tolerance");
  solve->add_option("--max-iters", max_iters, "iteration cap (0 = solver default)");
  solve->add_option("--fixed-iters", fixed_iters_flag, "run exactly this many interior iterations");
  solve->add_option("--pricing", pricing, "dantzig | steepest-edge")
      ->check(CLI::IsMember({"dantzig", "steepest-edge"}));
  solve->add_option("--out", out_path, "solution file to write");

  auto* certify = app.add_subcommand("certify", "verify optimality of a solution");
  certify->add_option("--instance", instance_path, "instance file")->required();
  certify->add_option("--solution", solution_path, "solution file")->required();
  certify->add_option("--solution2", solution2_path,
                      "second solution: cross-checks a BPDN/DS optimal pair");

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite, "table1 | table2 | path to a JSON suite file")
      ->required();
  bench->add_option("--out", out_path, "output file");
  bench->add_option("--format", format, "csv | markdown | jsonl");
  bench->add_option("--jobs", jobs, "worker threads");

  auto* profile = app.add_subcommand("profile", "split solution entries at a magnitude threshold");
  profile->add_option("--solution", solution_path, "solution file")->required();
  profile->add_option("--threshold", threshold, "significance cutoff");
  profile->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (fixed_iters_flag >= 0) fixed_iters = fixed_iters_flag;

  try {
    if (gen->parsed()) return cmd_gen(n, p, t, sigma, lambda, seed, out_path);
    if (solve->parsed())
      return cmd_solve(instance_path, solver, tol, max_iters, fixed_iters, pricing, out_path);
    if (certify->parsed()) return cmd_certify(instance_path, solution_path, solution2_path);
    if (bench->parsed()) return cmd_bench(suite, out_path, format, jobs);
    if (profile->parsed()) return cmd_profile(solution_path, threshold, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
