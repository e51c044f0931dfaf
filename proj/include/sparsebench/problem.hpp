#ifndef SPARSEBENCH_PROBLEM_HPP
#define SPARSEBENCH_PROBLEM_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sparsebench/linalg.hpp"

namespace sparsebench {

// Seedable Gaussian/uniform source. Built on mt19937_64 (whose output
// sequence is fixed by the standard) with Box-Muller for normals, so a
// seed determines an instance on every platform.
class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream_id);

  // Uniform in [0, bound), bias-free via rejection.
  uint64_t uniform_int(uint64_t bound);
  // Uniform in (0, 1].
  double uniform01();
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct ProblemInstance {
  int n = 0;         // rows of X
  int p = 0;         // columns of X, p >= n
  int t = 0;         // true support size
  DenseMatrix x;     // n x p, orthonormal rows
  Vector y;          // length n
  double lambda = 3e-3;
  Vector beta_true;  // length p, exactly t entries of +/-1
  std::vector<int> support_true;  // sorted, 0-based
  double sigma = 0.005;
  uint64_t seed = 0;
};

// Builds an instance the way the reference recipe does: support by
// partial shuffle, +/-1 signs from Gaussian signs, X as the transposed
// thin Q of a p x n Gaussian matrix, y = X beta + sigma * noise.
// Stream split: 0 = support permutation, 1 = signs, 2 = X, 3 = noise.
ProblemInstance generate_instance(int n, int p, int t, double sigma, double lambda,
                                  uint64_t seed);

// r = y - X beta
Vector residual(const ProblemInstance& inst, const Vector& beta);
// s = -X' r
Vector dual_vector(const ProblemInstance& inst, const Vector& r);
// max(0, ||X'(y - X beta)||_inf - lambda)
double ds_feasibility_violation(const ProblemInstance& inst, const Vector& beta);

enum class SolveStatus { Converged, IterationLimit, ToleranceMet, InfeasibleDetected };

std::string to_string(SolveStatus s);
SolveStatus status_from_string(const std::string& s);

// DS dual certificate: r with ||X'r||_inf <= lambda and z with r = X z.
struct DualCertificate {
  Vector r;
  Vector z;
};

struct Solution {
  Vector beta;
  Vector r;  // y - X beta
  Vector s;  // -X' r
  double objective = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationLimit;
  std::string solver_name;
  std::map<std::string, double> diagnostics;
  DualCertificate cert;  // empty vectors when the solver provides none

  bool has_cert() const { return !cert.r.empty(); }
};

// Fills r, s and the standard diagnostics from beta.
void finalize_solution(const ProblemInstance& inst, Solution& sol);

}  // namespace sparsebench

#endif
