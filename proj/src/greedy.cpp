#include "sparsebench/greedy.hpp"

#include <algorithm>
#include <cmath>

namespace sparsebench {

namespace {

DenseMatrix gather_columns(const DenseMatrix& x, const std::vector<int>& idx) {
  DenseMatrix s(x.rows(), static_cast<int>(idx.size()));
  for (int i = 0; i < x.rows(); ++i)
    for (size_t k = 0; k < idx.size(); ++k) s(i, static_cast<int>(k)) = x(i, idx[k]);
  return s;
}

struct SignCycle {
  Vector last_signs;
};

RestrictedKktResult kkt_solve_impl(const DenseMatrix& s, const Vector& y, double lambda,
                                   Vector sigma, SignCycle* cycle) {
  const int k = s.cols();
  const QrFactors qr = qr_factor(s);
  const DenseMatrix r = qr.r();
  const Vector sty = matvec_transpose(s, y);

  RestrictedKktResult res;
  const int cap = std::max(2, 2 * k);
  for (int it = 0; it < cap; ++it) {
    Vector rhs(k);
    for (int j = 0; j < k; ++j) rhs[j] = sty[j] - lambda * sigma[j];
    // S'S beta = rhs via R'R beta = rhs.
    Vector tmp = solve_tri(r, rhs, TriSide::Upper, true);
    Vector beta_s = solve_tri(r, tmp, TriSide::Upper, false);

    Vector next = sigma;
    for (int j = 0; j < k; ++j) {
      if (beta_s[j] > 0.0)
        next[j] = 1.0;
      else if (beta_s[j] < 0.0)
        next[j] = -1.0;
    }
    if (next == sigma) {
      res.beta_s = std::move(beta_s);
      res.signs = std::move(sigma);
      res.sign_iterations = it + 1;
      return res;
    }
    sigma = std::move(next);
  }
  if (cycle) {
    cycle->last_signs = std::move(sigma);
    res.sign_iterations = -1;
    return res;
  }
  throw SignCycleError("restricted_kkt_solve: sign iteration did not reach a fixed point");
}

// Exact minimizer of lambda ||b||_1 + 1/2 ||y - S b||^2 by cyclic
// soft-threshold coordinate descent. Used only as the fallback when the
// sign iteration fails to settle: its support and signs identify which
// active columns belong in the solution.
Vector restricted_cd_solve(const DenseMatrix& s, const Vector& y, double lambda) {
  const int n = s.rows(), k = s.cols();
  Vector beta(k, 0.0), r = y;
  Vector col_sq(k, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) col_sq[j] += s(i, j) * s(i, j);
  for (int pass = 0; pass < 100000; ++pass) {
    double change = 0.0;
    for (int j = 0; j < k; ++j) {
      if (col_sq[j] == 0.0) continue;
      double g = 0.0;
      for (int i = 0; i < n; ++i) g += s(i, j) * r[i];
      g += col_sq[j] * beta[j];
      double next = 0.0;
      if (g > lambda)
        next = (g - lambda) / col_sq[j];
      else if (g < -lambda)
        next = (g + lambda) / col_sq[j];
      const double delta = next - beta[j];
      if (delta != 0.0) {
        for (int i = 0; i < n; ++i) r[i] -= delta * s(i, j);
        beta[j] = next;
        change = std::max(change, std::abs(delta));
      }
    }
    if (change < 1e-13 * (1.0 + norm_inf(beta))) break;
  }
  return beta;
}

}  // namespace

RestrictedKktResult restricted_kkt_solve(const DenseMatrix& s, const Vector& y,
                                         double lambda, const Vector& sign_guess) {
  if (static_cast<int>(sign_guess.size()) != s.cols())
    throw DimensionMismatch("restricted_kkt_solve: sign_guess length mismatch");
  return kkt_solve_impl(s, y, lambda, sign_guess, nullptr);
}

Solution greedy_solve(const ProblemInstance& inst, const GreedyOptions& opts) {
  return greedy_solve(inst, inst.lambda, opts.tol,
                      opts.max_iters > 0 ? opts.max_iters : std::min(inst.n, inst.p));
}

Solution greedy_solve(const ProblemInstance& inst, double lambda, double tol,
                      int max_iters) {
  if (lambda <= 0.0) throw std::invalid_argument("greedy_solve: requires lambda > 0");
  if (max_iters < 1) throw std::invalid_argument("greedy_solve: requires max_iters >= 1");

  std::vector<int> active;       // in order of addition
  Vector signs;                  // parallel to active
  Vector beta(inst.p, 0.0);
  Vector r = inst.y;
  int additions = 0;
  int removals = 0;

  Solution sol;
  sol.solver_name = "greedy";
  sol.status = SolveStatus::IterationLimit;

  while (true) {
    const Vector st = matvec_transpose(inst.x, r);
    int pick = -1;
    double viol = 0.0;
    for (int j = 0; j < inst.p; ++j) {
      if (std::find(active.begin(), active.end(), j) != active.end()) continue;
      if (std::abs(st[j]) > viol) {  // strict: ties go to the smallest index
        viol = std::abs(st[j]);
        pick = j;
      }
    }
    if (viol <= lambda * (1.0 + tol)) {
      sol.status = SolveStatus::ToleranceMet;
      break;
    }
    if (additions >= max_iters) break;
    if (static_cast<int>(active.size()) >= inst.n)
      throw RankGuardError("greedy_solve: active set reached n columns");

    active.push_back(pick);
    signs.push_back(st[pick] > 0.0 ? 1.0 : -1.0);
    ++additions;

    // Re-solve the restricted stationarity system. When the sign
    // iteration fails to reach a fixed point, some active columns
    // belong at zero: an exact coordinate-descent solve of the
    // restricted problem identifies which, those are dropped, and the
    // sign iteration is retried from the descent's sign pattern.
    bool cd_used = false;
    while (true) {
      const DenseMatrix s = gather_columns(inst.x, active);
      SignCycle cycle;
      RestrictedKktResult res = kkt_solve_impl(s, inst.y, lambda, signs, &cycle);
      if (res.sign_iterations >= 0) {
        signs = res.signs;
        std::fill(beta.begin(), beta.end(), 0.0);
        for (size_t k = 0; k < active.size(); ++k) beta[active[k]] = res.beta_s[k];
        r = inst.y;
        const Vector sb = matvec(s, res.beta_s);
        for (int i = 0; i < inst.n; ++i) r[i] -= sb[i];
        break;
      }
      if (cd_used)
        throw SignCycleError("greedy_solve: sign iteration cycles on its own support");
      cd_used = true;
      const Vector beta_cd = restricted_cd_solve(s, inst.y, lambda);
      std::vector<int> keep_active;
      Vector keep_signs;
      for (size_t k = 0; k < active.size(); ++k) {
        if (std::abs(beta_cd[k]) > 1e-12) {
          keep_active.push_back(active[k]);
          keep_signs.push_back(beta_cd[k] > 0.0 ? 1.0 : -1.0);
        } else {
          ++removals;
        }
      }
      active = std::move(keep_active);
      signs = std::move(keep_signs);
      if (active.empty()) {
        r = inst.y;
        std::fill(beta.begin(), beta.end(), 0.0);
        break;
      }
    }
  }

  sol.beta = beta;
  sol.iterations = additions;
  sol.objective = lambda * norm1(beta) + 0.5 * dot(r, r);
  sol.diagnostics["removals"] = static_cast<double>(removals);
  finalize_solution(inst, sol);
  return sol;
}

}  // namespace sparsebench
