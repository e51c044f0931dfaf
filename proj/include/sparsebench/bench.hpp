#ifndef SPARSEBENCH_BENCH_HPP
#define SPARSEBENCH_BENCH_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sparsebench/problem.hpp"
#include "sparsebench/simplex.hpp"

namespace sparsebench {

// One solver-on-instance outcome row.
struct BenchRecord {
  int n = 0, p = 0, t = 0;
  double lambda = 0.0;
  uint64_t seed = 0;
  std::string solver_name;
  std::string formulation;
  double tol = 0.0;
  int iterations = 0;
  int support_size = 0;
  double objective = 0.0;
  double ds_violation = 0.0;
  double bpdn_kkt = 0.0;
  double l1_norm = 0.0;
  double recovery_error = 0.0;  // ||beta - beta_true||_inf on the true support
  double wall_time_ms = 0.0;
  std::string status;

  bool operator==(const BenchRecord&) const = default;
};

struct SolverRunOptions {
  double tol = 1e-8;
  int max_iters = 0;  // 0 = solver default
  std::optional<int> fixed_iters;
  Pricing pricing = Pricing::Dantzig;
  bool reduced_experiment = false;
};

// Dispatch by CLI solver name: ipm-ds, ipm-ds1, ipm-ds2, ipm-ds3,
// greedy, simplex-ds2.
Solution run_named_solver(const ProblemInstance& inst, const std::string& name,
                          const SolverRunOptions& opts = {});

struct SuiteSpec {
  std::vector<std::array<int, 3>> sizes;  // (n, p, T)
  std::vector<std::string> solvers;
  std::vector<double> tols;  // applied to simplex-ds2 runs
  std::vector<uint64_t> seeds;
  double lambda = 3e-3;
  double sigma = 0.005;
  std::optional<int> fixed_iters;
  int jobs = 1;
};

// "table1", "table2", or a JSON suite description.
SuiteSpec suite_preset(const std::string& name);
SuiteSpec suite_from_json(const std::string& text);

// One record per (instance, solver, tol); per-run errors are recorded
// in the status field instead of aborting the suite.
std::vector<BenchRecord> run_suite(const SuiteSpec& spec);

enum class TableFormat { Csv, Markdown };

std::string emit_table(const std::vector<BenchRecord>& records, TableFormat format);
std::vector<BenchRecord> parse_csv_table(const std::string& text);
std::string records_to_jsonl(const std::vector<BenchRecord>& records);

// Figure-1-style dump: two CSV blocks (index,value), significant then
// small, split at the threshold.
std::string emit_profile(const Solution& sol, double threshold);

}  // namespace sparsebench

#endif
