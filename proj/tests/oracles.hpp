#ifndef SPARSEBENCH_TESTS_ORACLES_HPP
#define SPARSEBENCH_TESTS_ORACLES_HPP

#include "sparsebench/problem.hpp"

namespace sparsebench::oracles {

// Brute-force optimum of min ||beta||_1 s.t. ||X'(y - X beta)||_inf <= lambda
// by enumerating candidate active sets: every split of the p degrees of
// freedom between zeroed coordinates and tight constraint rows (with a
// side each). Exponential in p; intended for p <= 8.
struct DsOracleResult {
  double objective = 0.0;
  Vector beta;
  bool feasible_point_found = false;
};
DsOracleResult ds_brute_force(const ProblemInstance& inst);

// Brute-force optimum of min lambda ||beta||_1 + 1/2 ||y - X beta||^2 by
// enumerating supports and sign patterns and checking the stationarity
// conditions. Exponential in p; intended for p <= 8.
struct BpdnOracleResult {
  double objective = 0.0;
  Vector beta;
};
BpdnOracleResult bpdn_brute_force(const ProblemInstance& inst);

}  // namespace sparsebench::oracles

#endif
