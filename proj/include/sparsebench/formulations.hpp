#ifndef SPARSEBENCH_FORMULATIONS_HPP
#define SPARSEBENCH_FORMULATIONS_HPP

#include <map>
#include <optional>
#include <string>

#include "sparsebench/linalg.hpp"
#include "sparsebench/problem.hpp"

namespace sparsebench {

// Unified convex program
//   min c'x + 1/2 x' diag(q) x   s.t.  A x = b,  lower <= x <= upper,
// with named blocks mapping components of x back to (v, w, r, s).
// The only quadratic terms that occur are separable, so Q is kept as a
// diagonal; absent for LPs.
struct VariableBlock {
  int offset = 0;
  int length = 0;
};

struct StandardProblem {
  Vector c;
  std::optional<Vector> q_diag;
  DenseMatrix a;
  Vector b;
  Vector lower;  // -inf allowed
  Vector upper;  // +inf allowed
  std::map<std::string, VariableBlock> block_map;
  std::string name;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(b.size()); }
  const VariableBlock& block(const std::string& key) const;
};

// min 1'u  s.t.  -u <= beta <= u,  -lambda <= X'(y - X beta) <= lambda
struct DsBoxProblem {
  DenseMatrix x;
  Vector y;
  double lambda = 0.0;
};

// A = [X'X, -X'X, I], b = X'y; variables (v, w, s).
StandardProblem build_ds1(const ProblemInstance& inst);
// A = [[X, -X, I, 0], [0, 0, X', I]], b = (y, 0); variables (v, w, r, s).
StandardProblem build_ds2(const ProblemInstance& inst);
// A = [X, -X, I], b = y, quadratic on the r block; variables (v, w, r).
// bound_r adds |r_i| <= ||y||_2 box bounds (off by default).
StandardProblem build_ds3(const ProblemInstance& inst, bool bound_r = false);

DsBoxProblem build_ds_box(const ProblemInstance& inst);

// beta = v - w; also reports 1'(v + w) as the l1-norm surrogate.
struct RecoveredBeta {
  Vector beta;
  double l1_surrogate = 0.0;
};
RecoveredBeta recover_beta(const StandardProblem& sp, const Vector& x);

}  // namespace sparsebench

#endif
