#ifndef SPARSEBENCH_JSON_IO_HPP
#define SPARSEBENCH_JSON_IO_HPP

#include <string>

#include "sparsebench/problem.hpp"

namespace sparsebench {

// Instance file: a single JSON document with n, p, T, lambda, sigma,
// seed, X (n rows of p numbers), y, beta_true and the sorted 0-based
// support. Doubles are emitted as shortest round-trip decimals, so a
// file is byte-stable for a given instance.
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);

std::string solution_to_json(const Solution& sol);
Solution solution_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace sparsebench

#endif
