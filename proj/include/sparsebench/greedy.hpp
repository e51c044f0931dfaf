#ifndef SPARSEBENCH_GREEDY_HPP
#define SPARSEBENCH_GREEDY_HPP

#include "sparsebench/linalg.hpp"
#include "sparsebench/problem.hpp"

namespace sparsebench {

struct SignCycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GreedyOptions {
  double tol = 1e-6;   // relative dual-feasibility tolerance on lambda
  int max_iters = 0;   // 0 means min(n, p)
};

// Solves S'(y - S beta_S) = lambda * sign(beta_S) by sign iteration:
// fix a sign guess, solve the linear system through the QR of S,
// recompute signs, repeat to a fixed point.
struct RestrictedKktResult {
  Vector beta_s;
  Vector signs;
  int sign_iterations = 0;
};

RestrictedKktResult restricted_kkt_solve(const DenseMatrix& s, const Vector& y,
                                         double lambda, const Vector& sign_guess);

// Homotopy/LARS-style active-set method for BPDN at one lambda: each
// outer iteration adds the column whose dual constraint is most
// violated, then re-solves the restricted stationarity system.
Solution greedy_solve(const ProblemInstance& inst, double lambda, double tol,
                      int max_iters);
Solution greedy_solve(const ProblemInstance& inst, const GreedyOptions& opts = {});

}  // namespace sparsebench

#endif
