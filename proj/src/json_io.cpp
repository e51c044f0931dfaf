#include "sparsebench/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sparsebench {

using nlohmann::json;

std::string instance_to_json(const ProblemInstance& inst) {
  json j;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["T"] = inst.t;
  j["lambda"] = inst.lambda;
  j["sigma"] = inst.sigma;
  j["seed"] = inst.seed;
  json rows = json::array();
  for (int i = 0; i < inst.n; ++i) {
    json row = json::array();
    for (int k = 0; k < inst.p; ++k) row.push_back(inst.x(i, k));
    rows.push_back(std::move(row));
  }
  j["X"] = std::move(rows);
  j["y"] = inst.y;
  j["beta_true"] = inst.beta_true;
  j["support"] = inst.support_true;
  return j.dump();
}

ProblemInstance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  ProblemInstance inst;
  inst.n = j.at("n").get<int>();
  inst.p = j.at("p").get<int>();
  inst.t = j.at("T").get<int>();
  inst.lambda = j.at("lambda").get<double>();
  inst.sigma = j.at("sigma").get<double>();
  inst.seed = j.at("seed").get<uint64_t>();
  inst.x = DenseMatrix(inst.n, inst.p);
  const json& rows = j.at("X");
  if (static_cast<int>(rows.size()) != inst.n)
    throw std::invalid_argument("instance_from_json: X row count mismatch");
  for (int i = 0; i < inst.n; ++i) {
    const json& row = rows[i];
    if (static_cast<int>(row.size()) != inst.p)
      throw std::invalid_argument("instance_from_json: X column count mismatch");
    for (int k = 0; k < inst.p; ++k) inst.x(i, k) = row[k].get<double>();
  }
  inst.y = j.at("y").get<Vector>();
  inst.beta_true = j.at("beta_true").get<Vector>();
  inst.support_true = j.at("support").get<std::vector<int>>();
  return inst;
}

std::string solution_to_json(const Solution& sol) {
  json j;
  j["solver"] = sol.solver_name;
  j["status"] = to_string(sol.status);
  j["objective"] = sol.objective;
  j["iterations"] = sol.iterations;
  j["beta"] = sol.beta;
  j["r"] = sol.r;
  j["s"] = sol.s;
  j["diagnostics"] = sol.diagnostics;
  if (sol.has_cert()) {
    j["cert"] = {{"r", sol.cert.r}, {"z", sol.cert.z}};
  }
  return j.dump();
}

Solution solution_from_json(const std::string& text) {
  const json j = json::parse(text);
  Solution sol;
  sol.solver_name = j.at("solver").get<std::string>();
  sol.status = status_from_string(j.at("status").get<std::string>());
  sol.objective = j.at("objective").get<double>();
  sol.iterations = j.at("iterations").get<int>();
  sol.beta = j.at("beta").get<Vector>();
  sol.r = j.at("r").get<Vector>();
  sol.s = j.at("s").get<Vector>();
  sol.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
  if (j.contains("cert")) {
    sol.cert.r = j["cert"].at("r").get<Vector>();
    sol.cert.z = j["cert"].at("z").get<Vector>();
  }
  return sol;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sparsebench
