#include "sparsebench/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sparsebench/ipm.hpp"

namespace sparsebench {

namespace {

// Global variable ids: v [0,p), w [p,2p), r [2p,2p+n), s [2p+n,3p+n).
struct VarIds {
  int n, p;
  int v(int j) const { return j; }
  int w(int j) const { return p + j; }
  int r(int i) const { return 2 * p + i; }
  int s(int j) const { return 2 * p + n + j; }
  bool is_v(int id) const { return id < p; }
  bool is_w(int id) const { return id >= p && id < 2 * p; }
  bool is_r(int id) const { return id >= 2 * p && id < 2 * p + n; }
  bool is_s(int id) const { return id >= 2 * p + n; }
  int col_of(int id) const {
    if (is_v(id)) return id;
    if (is_w(id)) return id - p;
    return id - 2 * p - n;  // s
  }
};

uint64_t basis_hash(const std::vector<VarStatus>& status) {
  uint64_t h = 1469598103934665603ull;
  for (VarStatus s : status) {
    h ^= static_cast<uint64_t>(s);
    h *= 1099511628211ull;
  }
  return h;
}

double column_dot(const DenseMatrix& x, int j, const Vector& v) {
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i) s += x(i, j) * v[i];
  return s;
}

}  // namespace

BasisState initial_basis(const ProblemInstance& inst) {
  const int n = inst.n, p = inst.p;
  BasisState st;
  st.n = n;
  st.p = p;
  st.status.assign(3 * p + n, VarStatus::AtLower);
  const VarIds ids{n, p};
  for (int i = 0; i < n; ++i) st.status[ids.r(i)] = VarStatus::Basic;
  for (int j = 0; j < p; ++j) st.status[ids.s(j)] = VarStatus::Basic;
  st.basic_s.resize(p);
  for (int j = 0; j < p; ++j) st.basic_s[j] = j;

  // Eq.-(5.1) block-triangular solves: r = y, then s = -X'r.
  st.xr = inst.y;
  st.xs = matvec_transpose(inst.x, st.xr);
  for (double& v : st.xs) v = -v;
  st.pi1.assign(n, 0.0);
  st.pi2.assign(p, 0.0);
  factorize_basis(inst, st);
  return st;
}

void factorize_basis(const ProblemInstance& inst, BasisState& state) {
  const int k = state.s_size();
  DenseMatrix c(k, k);
  for (int a = 0; a < k; ++a) {
    const int row = state.k_rows[a];
    for (int b = 0; b < k; ++b) {
      const int col = state.vw_cols[b];
      double s = 0.0;
      for (int i = 0; i < inst.n; ++i) s += inst.x(i, row) * inst.x(i, col);
      c(a, b) = -state.vw_signs[b] * s;
    }
  }
  try {
    state.inner = lu_factor(c);
  } catch (const SingularMatrixError& e) {
    throw SingularBasisError(std::string("factorize_basis: inner factor singular: ") +
                             e.what());
  }
}

void structured_solve(const ProblemInstance& inst, const BasisState& state,
                      const Vector& rhs1, const Vector& rhs2, Vector& xr, Vector& xs,
                      Vector& xvw) {
  const int k = state.s_size();
  Vector t(k);
  for (int a = 0; a < k; ++a)
    t[a] = rhs2[state.k_rows[a]] - column_dot(inst.x, state.k_rows[a], rhs1);
  xvw = k > 0 ? lu_solve(state.inner, t) : Vector{};

  xr = rhs1;
  for (int b = 0; b < k; ++b) {
    const int col = state.vw_cols[b];
    const double coef = state.vw_signs[b] * xvw[b];
    for (int i = 0; i < inst.n; ++i) xr[i] -= coef * inst.x(i, col);
  }

  const Vector xtxr = matvec_transpose(inst.x, xr);
  xs.resize(state.basic_s.size());
  for (size_t i = 0; i < state.basic_s.size(); ++i)
    xs[i] = rhs2[state.basic_s[i]] - xtxr[state.basic_s[i]];
}

void structured_solve_transpose(const ProblemInstance& inst, const BasisState& state,
                                const Vector& rhs_r, const Vector& rhs_s,
                                const Vector& rhs_vw, Vector& y1, Vector& y2) {
  const int k = state.s_size();
  y2.assign(state.p, 0.0);
  for (size_t i = 0; i < state.basic_s.size(); ++i) y2[state.basic_s[i]] = rhs_s[i];

  Vector tmp = rhs_r;
  {
    const Vector xy2 = matvec(inst.x, y2);
    for (int i = 0; i < inst.n; ++i) tmp[i] -= xy2[i];
  }
  if (k > 0) {
    Vector g(k);
    for (int b = 0; b < k; ++b)
      g[b] = rhs_vw[b] - state.vw_signs[b] * column_dot(inst.x, state.vw_cols[b], tmp);
    const Vector y2k = lu_solve_transpose(state.inner, g);
    for (int a = 0; a < k; ++a) y2[state.k_rows[a]] = y2k[a];
  }

  y1 = rhs_r;
  const Vector xy2 = matvec(inst.x, y2);
  for (int i = 0; i < inst.n; ++i) y1[i] -= xy2[i];
}

namespace {

// Assembles the basis densely (validation only).
DenseMatrix assemble_basis(const ProblemInstance& inst, const BasisState& st) {
  const int n = inst.n, p = inst.p;
  const int m = n + p;
  DenseMatrix b(m, m);
  int col = 0;
  for (int i = 0; i < n; ++i, ++col) {  // r columns: [e_i; column i of X']
    b(i, col) = 1.0;
    for (int j = 0; j < p; ++j) b(n + j, col) = inst.x(i, j);
  }
  for (int j : st.basic_s) {
    b(n + j, col) = 1.0;
    ++col;
  }
  for (int k = 0; k < st.s_size(); ++k, ++col)
    for (int i = 0; i < n; ++i) b(i, col) = st.vw_signs[k] * inst.x(i, st.vw_cols[k]);
  return b;
}

}  // namespace

Solution dual_simplex_solve(const ProblemInstance& inst, const SimplexOptions& opts,
                            SimplexTrace* trace) {
  const int n = inst.n, p = inst.p;
  const VarIds ids{n, p};
  const int nvars = 3 * p + n;
  const double inf = std::numeric_limits<double>::infinity();
  const double pivtol = 1e-9;

  Vector lb(nvars), ub(nvars);
  auto reset_bounds = [&]() {
    for (int j = 0; j < 2 * p; ++j) {
      lb[j] = 0.0;
      ub[j] = inf;
    }
    for (int i = 0; i < n; ++i) {
      lb[ids.r(i)] = -inf;
      ub[ids.r(i)] = inf;
    }
    for (int j = 0; j < p; ++j) {
      lb[ids.s(j)] = -inst.lambda;
      ub[ids.s(j)] = inst.lambda;
    }
  };
  reset_bounds();

  BasisState st = initial_basis(inst);
  std::unordered_set<uint64_t> seen_bases;
  bool perturbed = false;
  auto apply_perturbation = [&]() {
    for (int q = 0; q < nvars; ++q) {
      const double shift = 1e-10 * (0.5 + static_cast<double>((q * 2654435761u) % 97) / 97.0);
      if (std::isfinite(lb[q])) lb[q] -= shift;
      if (std::isfinite(ub[q])) ub[q] += shift;
    }
    perturbed = true;
  };

  Solution sol;
  sol.solver_name = "simplex-ds2";
  sol.status = SolveStatus::IterationLimit;
  double max_dual_infeas = 0.0;
  int iter = 0;

  Vector xvw, pi_rhs_vw;
  while (true) {
    // Primal values of the basic variables: B x_B = b - N x_N, where
    // nonbasic s variables sit at a bound and v/w sit at zero.
    Vector beff2(p, 0.0);
    for (int a = 0; a < static_cast<int>(st.k_rows.size()); ++a) {
      const int j = st.k_rows[a];
      const int id = ids.s(j);
      if (st.status[id] == VarStatus::AtUpper)
        beff2[j] = -ub[id];
      else
        beff2[j] = -lb[id];
    }
    structured_solve(inst, st, inst.y, beff2, st.xr, st.xs, xvw);
    st.xvw = xvw;

    // Row prices and reduced costs.
    pi_rhs_vw.assign(st.s_size(), 1.0);
    structured_solve_transpose(inst, st, Vector(n, 0.0), Vector(st.basic_s.size(), 0.0),
                               pi_rhs_vw, st.pi1, st.pi2);
    const Vector xtpi1 = matvec_transpose(inst.x, st.pi1);

    double dual_infeas = 0.0;
    for (int j = 0; j < p; ++j) {
      if (st.status[ids.v(j)] == VarStatus::AtLower)
        dual_infeas = std::max(dual_infeas, -(1.0 - xtpi1[j]));
      if (st.status[ids.w(j)] == VarStatus::AtLower)
        dual_infeas = std::max(dual_infeas, -(1.0 + xtpi1[j]));
      const int sid = ids.s(j);
      if (st.status[sid] == VarStatus::AtLower)
        dual_infeas = std::max(dual_infeas, -(-st.pi2[j]));
      else if (st.status[sid] == VarStatus::AtUpper)
        dual_infeas = std::max(dual_infeas, -st.pi2[j]);
    }
    max_dual_infeas = std::max(max_dual_infeas, dual_infeas);

    // Leaving candidates: basic variables outside their bounds.
    struct Candidate {
      int id;
      double viol;
      bool below;
      int kind;  // 0 = s, 1 = vw
      int pos;
    };
    std::vector<Candidate> violated;
    for (size_t i = 0; i < st.basic_s.size(); ++i) {
      const int id = ids.s(st.basic_s[i]);
      if (st.xs[i] < lb[id] - 1e-15)
        violated.push_back({id, lb[id] - st.xs[i], true, 0, static_cast<int>(i)});
      else if (st.xs[i] > ub[id] + 1e-15)
        violated.push_back({id, st.xs[i] - ub[id], false, 0, static_cast<int>(i)});
    }
    for (int b = 0; b < st.s_size(); ++b) {
      const int j = st.vw_cols[b];
      const int id = st.vw_signs[b] > 0 ? ids.v(j) : ids.w(j);
      if (st.xvw[b] < lb[id] - 1e-15)
        violated.push_back({id, lb[id] - st.xvw[b], true, 1, b});
    }

    double maxviol = 0.0;
    for (const Candidate& c : violated) maxviol = std::max(maxviol, c.viol);

    if (maxviol <= opts.tol) {
      sol.status = SolveStatus::ToleranceMet;
      break;
    }
    if (iter >= opts.max_iters) break;

    // Pricing.
    const Candidate* leave = nullptr;
    Vector rho1, rho2;
    if (opts.pricing == Pricing::Dantzig) {
      for (const Candidate& c : violated) {
        if (c.viol <= opts.tol) continue;
        if (!leave || c.viol > leave->viol || (c.viol == leave->viol && c.id < leave->id))
          leave = &c;
      }
    } else {
      double best = -1.0;
      for (const Candidate& c : violated) {
        if (c.viol <= opts.tol) continue;
        Vector er(n, 0.0), es(st.basic_s.size(), 0.0), evw(st.s_size(), 0.0);
        if (c.kind == 0)
          es[c.pos] = 1.0;
        else
          evw[c.pos] = 1.0;
        Vector t1, t2;
        structured_solve_transpose(inst, st, er, es, evw, t1, t2);
        const double wgt = dot(t1, t1) + dot(t2, t2);
        const double score = c.viol * c.viol / std::max(wgt, 1e-300);
        if (score > best || (score == best && leave && c.id < leave->id)) {
          best = score;
          leave = &c;
        }
      }
    }

    {
      Vector er(n, 0.0), es(st.basic_s.size(), 0.0), evw(st.s_size(), 0.0);
      if (leave->kind == 0)
        es[leave->pos] = 1.0;
      else
        evw[leave->pos] = 1.0;
      structured_solve_transpose(inst, st, er, es, evw, rho1, rho2);
    }
    const Vector xtrho1 = matvec_transpose(inst.x, rho1);

    // Dual ratio test over the nonbasic columns.
    const bool below = leave->below;  // leaving to its lower bound
    int entering = -1;
    double best_ratio = inf;
    double alpha_enter = 0.0;
    auto consider = [&](int id, double d, double alpha, bool at_lower) {
      double r;
      if (!below) {
        // theta >= 0
        if (at_lower && alpha > pivtol)
          r = std::max(0.0, d) / alpha;
        else if (!at_lower && alpha < -pivtol)
          r = std::min(0.0, d) / alpha;
        else
          return;
      } else {
        // theta <= 0; compare by |ratio|
        if (at_lower && alpha < -pivtol)
          r = std::max(0.0, d) / -alpha;
        else if (!at_lower && alpha > pivtol)
          r = -std::min(0.0, d) / alpha;
        else
          return;
      }
      if (r < best_ratio - 1e-12 || (r < best_ratio + 1e-12 && (entering < 0 || id < entering))) {
        best_ratio = r;
        entering = id;
        alpha_enter = alpha;
      }
    };
    for (int j = 0; j < p; ++j) {
      if (st.status[ids.v(j)] == VarStatus::AtLower)
        consider(ids.v(j), 1.0 - xtpi1[j], xtrho1[j], true);
      if (st.status[ids.w(j)] == VarStatus::AtLower)
        consider(ids.w(j), 1.0 + xtpi1[j], -xtrho1[j], true);
      const int sid = ids.s(j);
      if (st.status[sid] == VarStatus::AtLower)
        consider(sid, -st.pi2[j], rho2[j], true);
      else if (st.status[sid] == VarStatus::AtUpper)
        consider(sid, -st.pi2[j], rho2[j], false);
    }
    if (entering < 0)
      throw DualUnboundedError("dual_simplex_solve: dual ray found; primal infeasible");

    PivotRecord rec;
    rec.iteration = iter;
    rec.entering = entering;
    rec.leaving = leave->id;
    rec.max_violation = maxviol;
    rec.dual_infeasibility = dual_infeas;
    for (int i = 0; i < n; ++i)
      rec.r_all_basic = rec.r_all_basic && st.status[ids.r(i)] == VarStatus::Basic;

    if (opts.validate) {
      // Structured residual B x_B - b_eff through X products only.
      Vector blk1 = st.xr;
      for (int b = 0; b < st.s_size(); ++b)
        for (int i = 0; i < n; ++i)
          blk1[i] += st.vw_signs[b] * inst.x(i, st.vw_cols[b]) * st.xvw[b];
      Vector blk2 = matvec_transpose(inst.x, st.xr);
      for (size_t i = 0; i < st.basic_s.size(); ++i) blk2[st.basic_s[i]] += st.xs[i];
      double res = 0.0;
      for (int i = 0; i < n; ++i) res = std::max(res, std::abs(blk1[i] - inst.y[i]));
      for (int j = 0; j < p; ++j) res = std::max(res, std::abs(blk2[j] - beff2[j]));
      rec.factor_residual = res;

      if (n + p <= 600) {
        const DenseMatrix bd = assemble_basis(inst, st);
        Vector rhs(n + p);
        for (int i = 0; i < n; ++i) rhs[i] = inst.y[i];
        for (int j = 0; j < p; ++j) rhs[n + j] = beff2[j];
        const Vector xd = lu_solve(lu_factor(bd), rhs);
        double diff = 0.0;
        int col = 0;
        for (int i = 0; i < n; ++i, ++col) diff = std::max(diff, std::abs(xd[col] - st.xr[i]));
        for (size_t i = 0; i < st.basic_s.size(); ++i, ++col)
          diff = std::max(diff, std::abs(xd[col] - st.xs[i]));
        for (int b = 0; b < st.s_size(); ++b, ++col)
          diff = std::max(diff, std::abs(xd[col] - st.xvw[b]));
        rec.dense_solve_diff = diff;
      }
    }

    // Pivot: entering becomes basic, leaving goes to the violated bound.
    const int lid = leave->id;
    if (leave->kind == 0) {
      const int j = ids.col_of(lid);
      st.basic_s.erase(std::find(st.basic_s.begin(), st.basic_s.end(), j));
      st.k_rows.insert(std::upper_bound(st.k_rows.begin(), st.k_rows.end(), j), j);
    } else {
      st.vw_cols.erase(st.vw_cols.begin() + leave->pos);
      st.vw_signs.erase(st.vw_signs.begin() + leave->pos);
    }
    st.status[lid] = below ? VarStatus::AtLower : VarStatus::AtUpper;

    if (ids.is_s(entering)) {
      const int j = ids.col_of(entering);
      st.basic_s.insert(std::upper_bound(st.basic_s.begin(), st.basic_s.end(), j), j);
      st.k_rows.erase(std::find(st.k_rows.begin(), st.k_rows.end(), j));
    } else {
      st.vw_cols.push_back(ids.col_of(entering));
      st.vw_signs.push_back(ids.is_v(entering) ? 1.0 : -1.0);
    }
    st.status[entering] = VarStatus::Basic;

    factorize_basis(inst, st);

    rec.s_size = st.s_size();
    if (trace) trace->pivots.push_back(rec);
    (void)alpha_enter;

    if (!perturbed && !seen_bases.insert(basis_hash(st.status)).second)
      apply_perturbation();
    ++iter;
  }

  // Final values against the true bounds.
  if (perturbed) {
    reset_bounds();
    Vector beff2(p, 0.0);
    for (int j : st.k_rows) {
      const int id = ids.s(j);
      beff2[j] = st.status[id] == VarStatus::AtUpper ? -inst.lambda : inst.lambda;
    }
    structured_solve(inst, st, inst.y, beff2, st.xr, st.xs, st.xvw);
  }

  Vector beta(p, 0.0);
  double obj = 0.0;
  for (int b = 0; b < st.s_size(); ++b) {
    beta[st.vw_cols[b]] += st.vw_signs[b] * st.xvw[b];
    obj += st.xvw[b];
  }
  sol.beta = std::move(beta);
  sol.iterations = iter;
  sol.objective = obj;
  sol.diagnostics["s_size"] = static_cast<double>(st.s_size());
  sol.diagnostics["max_dual_infeasibility"] = max_dual_infeas;
  sol.diagnostics["perturbed"] = perturbed ? 1.0 : 0.0;

  Vector z(p);
  for (int j = 0; j < p; ++j) z[j] = -inst.lambda * st.pi2[j];
  sol.cert = make_ds_certificate(inst, z);

  finalize_solution(inst, sol);
  return sol;
}

SolutionProfile solution_profile(const Solution& sol, double threshold) {
  SolutionProfile prof;
  for (size_t j = 0; j < sol.beta.size(); ++j) {
    const double v = sol.beta[j];
    if (v == 0.0) continue;
    if (std::abs(v) >= threshold)
      prof.significant.emplace_back(static_cast<int>(j), v);
    else
      prof.small.emplace_back(static_cast<int>(j), v);
  }
  return prof;
}

}  // namespace sparsebench
