#include "sparsebench/bench.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include <json.hpp>

#include "sparsebench/certify.hpp"
#include "sparsebench/formulations.hpp"
#include "sparsebench/greedy.hpp"
#include "sparsebench/ipm.hpp"

namespace sparsebench {

Solution run_named_solver(const ProblemInstance& inst, const std::string& name,
                          const SolverRunOptions& opts) {
  if (name == "greedy") {
    GreedyOptions g;
    g.tol = opts.tol > 0 ? opts.tol : 1e-6;
    g.max_iters = opts.max_iters;
    return greedy_solve(inst, g);
  }
  if (name == "simplex-ds2") {
    SimplexOptions s;
    s.tol = opts.tol;
    s.pricing = opts.pricing;
    if (opts.max_iters > 0) s.max_iters = opts.max_iters;
    return dual_simplex_solve(inst, s);
  }
  IpmOptions io;
  io.tol_feas = io.tol_comp = opts.tol;
  if (opts.max_iters > 0) io.max_iters = opts.max_iters;
  io.fixed_iters = opts.fixed_iters;
  io.reduced_experiment = opts.reduced_experiment;
  if (name == "ipm-ds") return ipm_ds_solve(inst, io);
  if (name == "ipm-ds1") return ipm_solve(inst, build_ds1(inst), io);
  if (name == "ipm-ds2") return ipm_solve(inst, build_ds2(inst), io);
  if (name == "ipm-ds3") return ipm_solve(inst, build_ds3(inst), io);
  throw std::invalid_argument("unknown solver: " + name);
}

namespace {

std::string formulation_of(const std::string& solver) {
  if (solver == "ipm-ds") return "ds-box";
  if (solver == "ipm-ds1") return "ds1";
  if (solver == "ipm-ds2") return "ds2";
  if (solver == "ipm-ds3") return "ds3";
  if (solver == "greedy") return "bpdn";
  if (solver == "simplex-ds2") return "ds2";
  return "?";
}

BenchRecord run_one(const ProblemInstance& inst, const std::string& solver, double tol,
                    std::optional<int> fixed_iters) {
  BenchRecord rec;
  rec.n = inst.n;
  rec.p = inst.p;
  rec.t = inst.t;
  rec.lambda = inst.lambda;
  rec.seed = inst.seed;
  rec.solver_name = solver;
  rec.formulation = formulation_of(solver);
  rec.tol = tol;

  const auto start = std::chrono::steady_clock::now();
  try {
    SolverRunOptions opts;
    opts.tol = tol;
    opts.fixed_iters = fixed_iters;
    Solution sol = run_named_solver(inst, solver, opts);
    rec.iterations = sol.iterations;
    rec.objective = sol.objective;
    rec.status = to_string(sol.status);
    rec.support_size = static_cast<int>(sol.diagnostics.at("support_size"));
    rec.ds_violation = sol.diagnostics.at("ds_violation");
    rec.l1_norm = sol.diagnostics.at("l1_norm");
    rec.bpdn_kkt = bpdn_kkt_residual(inst, sol.beta, inst.lambda);
    for (int j : inst.support_true)
      rec.recovery_error =
          std::max(rec.recovery_error, std::abs(sol.beta[j] - inst.beta_true[j]));
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
  }
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return rec;
}

}  // namespace

SuiteSpec suite_preset(const std::string& name) {
  SuiteSpec spec;
  spec.seeds = {1};
  if (name == "table1") {
    spec.sizes = {{120, 512, 20}, {240, 1024, 40}};
    spec.solvers = {"ipm-ds", "ipm-ds1", "ipm-ds2", "ipm-ds3", "greedy"};
    spec.tols = {1e-8};
  } else if (name == "table2") {
    spec.sizes = {{240, 1024, 40}};
    spec.solvers = {"simplex-ds2"};
    spec.tols = {0.1, 0.01, 0.001};
  } else {
    throw std::invalid_argument("unknown suite preset: " + name);
  }
  return spec;
}

SuiteSpec suite_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SuiteSpec spec;
  for (const auto& row : j.at("sizes"))
    spec.sizes.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
  spec.solvers = j.at("solvers").get<std::vector<std::string>>();
  spec.tols = j.value("tols", std::vector<double>{1e-8});
  spec.seeds = j.value("seeds", std::vector<uint64_t>{1});
  spec.lambda = j.value("lambda", 3e-3);
  spec.sigma = j.value("sigma", 0.005);
  if (j.contains("fixed_iters")) spec.fixed_iters = j["fixed_iters"].get<int>();
  spec.jobs = j.value("jobs", 1);
  return spec;
}

std::vector<BenchRecord> run_suite(const SuiteSpec& spec) {
  struct Task {
    std::array<int, 3> size;
    uint64_t seed;
    std::string solver;
    double tol;
  };
  std::vector<Task> tasks;
  for (const auto& size : spec.sizes)
    for (uint64_t seed : spec.seeds)
      for (const auto& solver : spec.solvers) {
        if (solver == "simplex-ds2") {
          for (double tol : spec.tols) tasks.push_back({size, seed, solver, tol});
        } else {
          tasks.push_back({size, seed, solver, 1e-8});
        }
      }

  std::vector<BenchRecord> records(tasks.size());
  auto work = [&](size_t i) {
    const Task& t = tasks[i];
    const ProblemInstance inst =
        generate_instance(t.size[0], t.size[1], t.size[2], spec.sigma, spec.lambda, t.seed);
    records[i] = run_one(inst, t.solver, t.tol, spec.fixed_iters);
  };

  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    for (int w = 0; w < jobs; ++w)
      futs.push_back(std::async(std::launch::async, [&]() {
        for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) work(i);
      }));
    for (auto& f : futs) f.get();
  }
  return records;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const char* kHeader =
    "n,p,T,lambda,seed,solver_name,formulation,tol,iterations,support_size,objective,"
    "ds_violation,bpdn_kkt,l1_norm,recovery_error,wall_time_ms,status";

std::vector<std::string> record_fields(const BenchRecord& r) {
  return {std::to_string(r.n),
          std::to_string(r.p),
          std::to_string(r.t),
          fmt_double(r.lambda),
          std::to_string(r.seed),
          r.solver_name,
          r.formulation,
          fmt_double(r.tol),
          std::to_string(r.iterations),
          std::to_string(r.support_size),
          fmt_double(r.objective),
          fmt_double(r.ds_violation),
          fmt_double(r.bpdn_kkt),
          fmt_double(r.l1_norm),
          fmt_double(r.recovery_error),
          fmt_double(r.wall_time_ms),
          r.status};
}

}  // namespace

std::string emit_table(const std::vector<BenchRecord>& records, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << kHeader << "\r\n";
    for (const auto& r : records) {
      const auto fields = record_fields(r);
      for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(fields[i]);
      }
      out << "\r\n";
    }
  } else {
    std::istringstream hdr(kHeader);
    std::string col;
    out << '|';
    int ncols = 0;
    while (std::getline(hdr, col, ',')) {
      out << ' ' << col << " |";
      ++ncols;
    }
    out << "\n|";
    for (int i = 0; i < ncols; ++i) out << " --- |";
    out << "\n";
    for (const auto& r : records) {
      out << '|';
      for (const auto& f : record_fields(r)) out << ' ' << f << " |";
      out << "\n";
    }
  }
  return out.str();
}

std::vector<BenchRecord> parse_csv_table(const std::string& text) {
  std::vector<BenchRecord> records;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    // Fields contain no embedded commas except possibly a quoted status.
    std::vector<std::string> f;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    f.push_back(cur);
    if (f.size() != 17) throw std::invalid_argument("parse_csv_table: bad field count");
    BenchRecord r;
    r.n = std::stoi(f[0]);
    r.p = std::stoi(f[1]);
    r.t = std::stoi(f[2]);
    r.lambda = std::strtod(f[3].c_str(), nullptr);
    r.seed = std::strtoull(f[4].c_str(), nullptr, 10);
    r.solver_name = f[5];
    r.formulation = f[6];
    r.tol = std::strtod(f[7].c_str(), nullptr);
    r.iterations = std::stoi(f[8]);
    r.support_size = std::stoi(f[9]);
    r.objective = std::strtod(f[10].c_str(), nullptr);
    r.ds_violation = std::strtod(f[11].c_str(), nullptr);
    r.bpdn_kkt = std::strtod(f[12].c_str(), nullptr);
    r.l1_norm = std::strtod(f[13].c_str(), nullptr);
    r.recovery_error = std::strtod(f[14].c_str(), nullptr);
    r.wall_time_ms = std::strtod(f[15].c_str(), nullptr);
    r.status = f[16];
    records.push_back(std::move(r));
  }
  return records;
}

std::string records_to_jsonl(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    nlohmann::json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["T"] = r.t;
    j["lambda"] = r.lambda;
    j["seed"] = r.seed;
    j["solver_name"] = r.solver_name;
    j["formulation"] = r.formulation;
    j["tol"] = r.tol;
    j["iterations"] = r.iterations;
    j["support_size"] = r.support_size;
    j["objective"] = r.objective;
    j["ds_violation"] = r.ds_violation;
    j["bpdn_kkt"] = r.bpdn_kkt;
    j["l1_norm"] = r.l1_norm;
    j["recovery_error"] = r.recovery_error;
    j["wall_time_ms"] = r.wall_time_ms;
    j["status"] = r.status;
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string emit_profile(const Solution& sol, double threshold) {
  const SolutionProfile prof = solution_profile(sol, threshold);
  std::ostringstream out;
  out << "# significant\nindex,value\n";
  for (const auto& [idx, val] : prof.significant) out << idx << ',' << fmt_double(val) << "\n";
  out << "\n# small\nindex,value\n";
  for (const auto& [idx, val] : prof.small) out << idx << ',' << fmt_double(val) << "\n";
  return out.str();
}

}  // namespace sparsebench
