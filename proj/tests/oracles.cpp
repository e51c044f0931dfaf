#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace sparsebench::oracles {

DsOracleResult ds_brute_force(const ProblemInstance& inst) {
  const int p = inst.p;
  if (p > 16) throw std::invalid_argument("ds_brute_force: p too large");
  const DenseMatrix g = matmul_at_b(inst.x, inst.x);  // X'X
  const Vector h = matvec_transpose(inst.x, inst.y);  // X'y
  const double feas_tol = 1e-9 * (1.0 + inst.lambda) + 1e-12;

  DsOracleResult best;
  best.objective = std::numeric_limits<double>::infinity();

  std::vector<int> tight_rows;
  for (uint32_t zmask = 0; zmask < (1u << p); ++zmask) {
    const int nz = std::popcount(zmask);
    const int need = p - nz;  // tight constraint rows to pick
    for (uint32_t rmask = 0; rmask < (1u << p); ++rmask) {
      if (std::popcount(rmask) != need) continue;
      tight_rows.clear();
      for (int i = 0; i < p; ++i)
        if (rmask & (1u << i)) tight_rows.push_back(i);
      for (uint32_t smask = 0; smask < (1u << need); ++smask) {
        DenseMatrix m(p, p);
        Vector rhs(p, 0.0);
        int row = 0;
        for (int j = 0; j < p; ++j) {
          if (zmask & (1u << j)) m(row++, j) = 1.0;
        }
        for (int a = 0; a < need; ++a, ++row) {
          const int i = tight_rows[a];
          for (int j = 0; j < p; ++j) m(row, j) = g(i, j);
          rhs[row] = h[i] + ((smask & (1u << a)) ? inst.lambda : -inst.lambda);
        }
        Vector beta;
        try {
          beta = lu_solve(lu_factor(m), rhs);
        } catch (const SingularMatrixError&) {
          continue;
        }
        // full feasibility at the candidate vertex
        double viol = 0.0;
        for (int i = 0; i < p; ++i) {
          double gi = 0.0;
          for (int j = 0; j < p; ++j) gi += g(i, j) * beta[j];
          viol = std::max(viol, std::abs(h[i] - gi) - inst.lambda);
        }
        if (viol > feas_tol) continue;
        const double obj = norm1(beta);
        if (obj < best.objective) {
          best.objective = obj;
          best.beta = beta;
          best.feasible_point_found = true;
        }
      }
    }
  }
  return best;
}

BpdnOracleResult bpdn_brute_force(const ProblemInstance& inst) {
  const int p = inst.p;
  const int n = inst.n;
  if (p > 16) throw std::invalid_argument("bpdn_brute_force: p too large");

  BpdnOracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  const Vector h = matvec_transpose(inst.x, inst.y);

  std::vector<int> support;
  for (uint32_t mask = 0; mask < (1u << p); ++mask) {
    support.clear();
    for (int j = 0; j < p; ++j)
      if (mask & (1u << j)) support.push_back(j);
    const int k = static_cast<int>(support.size());
    if (k > n) continue;  // X_S'X_S singular beyond rank
    for (uint32_t smask = 0; smask < (1u << k); ++smask) {
      // (X_S' X_S) beta_S = X_S' y - lambda * sigma
      DenseMatrix gs(k, k);
      Vector rhs(k);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          double v = 0.0;
          for (int i = 0; i < n; ++i) v += inst.x(i, support[a]) * inst.x(i, support[b]);
          gs(a, b) = v;
        }
        const double sigma_a = (smask & (1u << a)) ? 1.0 : -1.0;
        rhs[a] = h[support[a]] - inst.lambda * sigma_a;
      }
      Vector beta_s;
      try {
        beta_s = lu_solve(lu_factor(gs), rhs);
      } catch (const SingularMatrixError&) {
        continue;
      }
      bool sign_ok = true;
      for (int a = 0; a < k; ++a) {
        const double sigma_a = (smask & (1u << a)) ? 1.0 : -1.0;
        if (beta_s[a] * sigma_a <= 0.0) {
          sign_ok = false;
          break;
        }
      }
      if (!sign_ok) continue;
      Vector beta(p, 0.0);
      for (int a = 0; a < k; ++a) beta[support[a]] = beta_s[a];
      const Vector r = residual(inst, beta);
      const Vector s = matvec_transpose(inst.x, r);
      bool dual_ok = true;
      for (int j = 0; j < p && dual_ok; ++j)
        if (!(mask & (1u << j)) && std::abs(s[j]) > inst.lambda * (1.0 + 1e-9))
          dual_ok = false;
      if (!dual_ok) continue;
      const double obj = inst.lambda * norm1(beta) + 0.5 * dot(r, r);
      if (obj < best.objective) {
        best.objective = obj;
        best.beta = beta;
      }
    }
  }
  if (!std::isfinite(best.objective)) {
    // beta = 0 is always stationarity-feasible when ||X'y||_inf <= lambda;
    // otherwise some support must have been accepted, so reaching here
    // means the zero candidate applies.
    best.beta.assign(p, 0.0);
    best.objective = 0.5 * dot(inst.y, inst.y);
  }
  return best;
}

}  // namespace sparsebench::oracles
