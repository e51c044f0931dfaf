#ifndef SPARSEBENCH_IPM_HPP
#define SPARSEBENCH_IPM_HPP

#include <optional>

#include "sparsebench/formulations.hpp"
#include "sparsebench/problem.hpp"

namespace sparsebench {

struct IllConditionedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IpmOptions {
  double tol_feas = 1e-8;
  double tol_comp = 1e-8;
  int max_iters = 50;
  // Run exactly this many iterations with no convergence test
  // (fixed-budget bench parity mode).
  std::optional<int> fixed_iters;
  double sigma_centering = 0.1;
  double step_fraction = 0.99;
  // Diagonal shift; grown x10 on Cholesky failure, up to 1e-4.
  double regularization = 1e-10;
  // Box solver only: also compute each step through the n x n
  // reduction and record the discrepancy per iteration.
  bool reduced_experiment = false;
};

// H = A diag(d1) A' + diag(d2), symmetrized after forming.
DenseMatrix form_normal_matrix(const DenseMatrix& A, const Vector& d1, const Vector& d2);

// Raw primal-dual state of a StandardProblem solve, for callers that
// need more than a Solution (duals, mu trace).
struct IpmRawResult {
  Vector x;
  Vector yd;          // equality-constraint duals
  Vector zl, zu;      // bound duals (zero where the bound is infinite)
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationLimit;
  Vector mu_history;  // average complementarity per iteration
  double min_interior = 0.0;  // smallest slack/multiplier seen over all iterates
};

// Single-corrector path-following on the perturbed KKT conditions;
// each step solves the normal equations H = A D1 A' + D2 by dense
// Cholesky (H is m x m: n for ds3, n+p for ds2, p for ds1).
IpmRawResult ipm_solve_raw(const StandardProblem& sp, const IpmOptions& opts);

// Wraps ipm_solve_raw: recovers beta through the block map, fills the
// Solution invariants and, for DS formulations, a dual certificate
// taken from the equality duals.
Solution ipm_solve(const ProblemInstance& inst, const StandardProblem& sp,
                   const IpmOptions& opts);

// Specialized solver for the (DS) box form. Each Newton step solves
// the p x p system H d_beta = r3 with H = D12 + X'(X D34 X')X by dense
// Cholesky; the big split-variable constraint matrix is never formed.
Solution ipm_ds_solve(const DsBoxProblem& ds, const IpmOptions& opts);
Solution ipm_ds_solve(const ProblemInstance& inst, const IpmOptions& opts);

// One mid-solve probe of the n x n reduction: returns the relative
// step discrepancy against the direct p x p solve and the spread of
// D12. Exposed for tests; ipm_ds_solve records the same quantities
// per iteration when opts.reduced_experiment is set.
struct ReducedStepDiagnostics {
  double relative_discrepancy = 0.0;
  double d12_condition = 0.0;
  bool reduced_singular = false;
};

ReducedStepDiagnostics reduced_step_experiment(const DenseMatrix& x, const Vector& d12,
                                               const Vector& d34, const Vector& r3,
                                               const Vector& delta_beta_direct);

// Scales z so that r = X z satisfies ||X'r||_inf <= lambda exactly.
DualCertificate make_ds_certificate(const ProblemInstance& inst, const Vector& z_raw);

}  // namespace sparsebench

#endif
