#include "sparsebench/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace sparsebench {

RandomStream::RandomStream(uint64_t seed, uint64_t stream_id) {
  std::seed_seq seq{static_cast<unsigned>(seed & 0xffffffffu),
                    static_cast<unsigned>(seed >> 32),
                    static_cast<unsigned>(stream_id & 0xffffffffu),
                    static_cast<unsigned>(stream_id >> 32)};
  gen_.seed(seq);
}

uint64_t RandomStream::uniform_int(uint64_t bound) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % bound;
}

double RandomStream::uniform01() {
  // 53 random bits; shifted into (0, 1].
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

ProblemInstance generate_instance(int n, int p, int t, double sigma, double lambda,
                                  uint64_t seed) {
  if (n < 1 || t < 0 || n > p || t > p || sigma < 0.0 || lambda < 0.0)
    throw std::invalid_argument("generate_instance: invalid parameters");

  ProblemInstance inst;
  inst.n = n;
  inst.p = p;
  inst.t = t;
  inst.sigma = sigma;
  inst.lambda = lambda;
  inst.seed = seed;

  // Support: Fisher-Yates partial shuffle, first t positions.
  RandomStream rng_support(seed, 0);
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < t; ++i) {
    const int j = i + static_cast<int>(rng_support.uniform_int(p - i));
    std::swap(perm[i], perm[j]);
  }
  inst.support_true.assign(perm.begin(), perm.begin() + t);
  std::sort(inst.support_true.begin(), inst.support_true.end());

  RandomStream rng_signs(seed, 1);
  inst.beta_true.assign(p, 0.0);
  for (int i = 0; i < t; ++i)
    inst.beta_true[perm[i]] = rng_signs.gaussian() >= 0.0 ? 1.0 : -1.0;

  // X = Q' for the thin QR of a p x n Gaussian matrix, so X X' = I.
  RandomStream rng_x(seed, 2);
  DenseMatrix g(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng_x.gaussian();
  inst.x = qr_factor(g).thin_q().transposed();

  RandomStream rng_noise(seed, 3);
  inst.y = matvec(inst.x, inst.beta_true);
  for (int i = 0; i < n; ++i) inst.y[i] += sigma * rng_noise.gaussian();

  return inst;
}

Vector residual(const ProblemInstance& inst, const Vector& beta) {
  if (static_cast<int>(beta.size()) != inst.p)
    throw DimensionMismatch("residual: beta length != p");
  Vector r = inst.y;
  const Vector xb = matvec(inst.x, beta);
  for (int i = 0; i < inst.n; ++i) r[i] -= xb[i];
  return r;
}

Vector dual_vector(const ProblemInstance& inst, const Vector& r) {
  if (static_cast<int>(r.size()) != inst.n)
    throw DimensionMismatch("dual_vector: r length != n");
  Vector s = matvec_transpose(inst.x, r);
  for (double& v : s) v = -v;
  return s;
}

double ds_feasibility_violation(const ProblemInstance& inst, const Vector& beta) {
  const Vector r = residual(inst, beta);
  const Vector xtr = matvec_transpose(inst.x, r);
  return std::max(0.0, norm_inf(xtr) - inst.lambda);
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::ToleranceMet: return "tolerance-met";
    case SolveStatus::InfeasibleDetected: return "infeasible-detected";
  }
  return "unknown";
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "converged") return SolveStatus::Converged;
  if (s == "iteration-limit") return SolveStatus::IterationLimit;
  if (s == "tolerance-met") return SolveStatus::ToleranceMet;
  if (s == "infeasible-detected") return SolveStatus::InfeasibleDetected;
  throw std::invalid_argument("unknown status: " + s);
}

void finalize_solution(const ProblemInstance& inst, Solution& sol) {
  sol.r = residual(inst, sol.beta);
  sol.s = dual_vector(inst, sol.r);
  int support = 0;
  for (double v : sol.beta)
    if (std::abs(v) > 1e-8) ++support;
  sol.diagnostics["support_size"] = static_cast<double>(support);
  sol.diagnostics["ds_violation"] = ds_feasibility_violation(inst, sol.beta);
  sol.diagnostics["l1_norm"] = norm1(sol.beta);
}

}  // namespace sparsebench
