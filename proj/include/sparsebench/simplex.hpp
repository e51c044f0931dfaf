#ifndef SPARSEBENCH_SIMPLEX_HPP
#define SPARSEBENCH_SIMPLEX_HPP

#include <vector>

#include "sparsebench/linalg.hpp"
#include "sparsebench/problem.hpp"

namespace sparsebench {

struct SingularBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DualUnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variables of (DS2), indexed globally:
//   [0, p)        v_j   in [0, inf)
//   [p, 2p)       w_j   in [0, inf)
//   [2p, 2p+n)    r_i   free, always basic
//   [2p+n, 3p+n)  s_j   in [-lambda, lambda]
enum class VarStatus : uint8_t { Basic, AtLower, AtUpper };

// Basic/nonbasic partition with the block-structured factors. The
// only dense factorization is the LU of -X_K' S_bar, where S_bar holds
// the basic v/w columns of X scaled by +/-1 and K indexes the rows
// whose s variable is nonbasic.
struct BasisState {
  int n = 0, p = 0;
  std::vector<VarStatus> status;   // size 3p + n
  std::vector<int> basic_s;        // sorted j with s_j basic
  std::vector<int> k_rows;         // sorted j with s_j nonbasic
  std::vector<int> vw_cols;        // column index per basic v/w
  Vector vw_signs;                 // +1 when v_j is basic, -1 for w_j
  LuFactors inner;                 // LU of -X_K' S_bar (|S| x |S|)

  // Primal values of the basic variables and the row prices.
  Vector xr;          // length n
  Vector xs;          // parallel to basic_s
  Vector xvw;         // parallel to vw_cols
  Vector pi1, pi2;    // duals, lengths n and p

  int s_size() const { return static_cast<int>(vw_cols.size()); }
};

enum class Pricing { Dantzig, SteepestEdge };

struct SimplexOptions {
  double tol = 1e-6;        // termination: max primal bound violation
  Pricing pricing = Pricing::Dantzig;
  int max_iters = 50000;
  int refactor_every = 1;   // structured factors are rebuilt per pivot
  bool validate = false;    // per-pivot residual and invariant checks
};

struct PivotRecord {
  int iteration = 0;
  int entering = -1;
  int leaving = -1;
  double max_violation = 0.0;
  int s_size = 0;
  double dual_infeasibility = 0.0;   // worst reduced-cost sign violation
  double factor_residual = 0.0;      // ||B x_B - b_eff||_inf (validate only)
  double dense_solve_diff = -1.0;    // vs assembled dense basis (validate, n+p <= 600)
  bool r_all_basic = true;
};

struct SimplexTrace {
  std::vector<PivotRecord> pivots;
};

// Eq.-(5.1)-style warm start: r = y and s = -X'y basic, v = w = 0
// nonbasic at lower, duals zero (dual feasible).
BasisState initial_basis(const ProblemInstance& inst);

// Rebuilds the structured factors for the current partition.
void factorize_basis(const ProblemInstance& inst, BasisState& state);

// Solves B [xr; xs; xvw] = [rhs1; rhs2] using only X products and the
// small LU.
void structured_solve(const ProblemInstance& inst, const BasisState& state,
                      const Vector& rhs1, const Vector& rhs2, Vector& xr, Vector& xs,
                      Vector& xvw);

// Transpose solve: B' [y1; y2] = rhs given per basic variable.
void structured_solve_transpose(const ProblemInstance& inst, const BasisState& state,
                                const Vector& rhs_r, const Vector& rhs_s,
                                const Vector& rhs_vw, Vector& y1, Vector& y2);

// Bounded-variable dual simplex on (DS2) from the initial basis.
Solution dual_simplex_solve(const ProblemInstance& inst, const SimplexOptions& opts,
                            SimplexTrace* trace = nullptr);

// Partition of the nonzero beta entries by magnitude, sorted by index.
struct SolutionProfile {
  std::vector<std::pair<int, double>> significant;
  std::vector<std::pair<int, double>> small;
};

SolutionProfile solution_profile(const Solution& sol, double threshold);

}  // namespace sparsebench

#endif
