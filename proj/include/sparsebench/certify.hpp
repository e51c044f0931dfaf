#ifndef SPARSEBENCH_CERTIFY_HPP
#define SPARSEBENCH_CERTIFY_HPP

#include "sparsebench/problem.hpp"

namespace sparsebench {

// Optimality and cross-model verification: duality gaps, KKT
// residuals, and the structural relations between BPDN and DS optima.

// lambda ||beta||_1 + 1/2 ||y - X beta||^2
double bpdn_objective(const ProblemInstance& inst, const Vector& beta);

// Gap between the BPDN objective at beta and the dual objective
// y'r - 1/2 ||r||^2; r must satisfy ||X'r||_inf <= lambda (1 + 1e-9).
// Nonnegative for any feasible r; zero exactly at a primal/dual
// optimal pair.
double bpdn_gap(const ProblemInstance& inst, const Vector& beta, const Vector& r);

// Gap between ||beta||_1 and the DS dual objective for a certificate
// scaled to ||X'r||_inf <= lambda with r = X z. In that scaling the
// dual objective reads y'r / lambda - ||z||_1; nonnegative for any
// mutually feasible pair and zero at optimality.
double ds_gap(const ProblemInstance& inst, const Vector& beta, const DualCertificate& cert);

// Max stationarity violation of BPDN at beta: for beta_j != 0,
// |s~_j - lambda sign(beta_j)|; for beta_j == 0, max(0, |s~_j| - lambda),
// with s~ = X'(y - X beta). Entries with |beta_j| <= zero_tol count as zero.
double bpdn_kkt_residual(const ProblemInstance& inst, const Vector& beta, double lambda,
                         double zero_tol = 1e-10);

struct CrossCheckReport {
  double bpdn_ds_violation = 0.0;  // DS-feasibility violation of the BPDN optimum
  double l1_margin = 0.0;          // ||beta_BPDN||_1 - ||beta_DS||_1
  double r2_margin = 0.0;          // 1/2||r_DS||^2 - 1/2||r_BPDN||^2
  bool ok = false;
};

// Checks the structural relations between certified optima:
// (a) the BPDN optimum is DS-feasible, (b) DS has the smaller l1 norm,
// (c) BPDN has the smaller residual. tol applies to all three margins.
CrossCheckReport cross_check(const ProblemInstance& inst, const Solution& sol_bpdn,
                             const Solution& sol_ds, double tol = 1e-6);

}  // namespace sparsebench

#endif
