#include "sparsebench/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sparsebench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cholesky with the regularization-growth policy: on a failed pivot,
// add a diagonal shift and retry, x10 up to 1e-4.
CholFactor chol_with_regularization(DenseMatrix H, double reg0) {
  double reg = reg0;
  for (int i = 0; i < H.rows(); ++i) H(i, i) += reg;
  while (true) {
    try {
      return chol_factor(H);
    } catch (const NotPositiveDefiniteError&) {
      const double grown = reg * 10.0;
      if (grown > 1e-4) throw IllConditionedError("ipm: Cholesky failed at regularization 1e-4");
      for (int i = 0; i < H.rows(); ++i) H(i, i) += grown - reg;
      reg = grown;
    }
  }
}

Vector refined_chol_solve(const DenseMatrix& H, const CholFactor& f, const Vector& rhs,
                          int rounds = 2) {
  Vector x = solve_chol(f, rhs);
  for (int k = 0; k < rounds; ++k) {
    Vector res = rhs;
    const Vector hx = matvec(H, x);
    for (size_t i = 0; i < res.size(); ++i) res[i] -= hx[i];
    const Vector corr = solve_chol(f, res);
    for (size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  }
  return x;
}

Vector box_residual(const DsBoxProblem& ds, const Vector& beta) {
  Vector r = ds.y;
  const Vector xb = matvec(ds.x, beta);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= xb[i];
  return r;
}

}  // namespace

DenseMatrix form_normal_matrix(const DenseMatrix& A, const Vector& d1, const Vector& d2) {
  const int m = A.rows(), nv = A.cols();
  if (static_cast<int>(d1.size()) != nv || static_cast<int>(d2.size()) != m)
    throw DimensionMismatch("form_normal_matrix: size mismatch");
  DenseMatrix H(m, m);
  for (int i = 0; i < m; ++i) {
    const double* arow = A.row_ptr(i);
    for (int k = i; k < m; ++k) {
      const double* brow = A.row_ptr(k);
      double s = 0.0;
      for (int j = 0; j < nv; ++j) s += arow[j] * d1[j] * brow[j];
      H(i, k) = s;
      H(k, i) = s;
    }
    H(i, i) += d2[i];
  }
  return H;
}

IpmRawResult ipm_solve_raw(const StandardProblem& sp, const IpmOptions& opts) {
  const int m = sp.num_rows();
  const int nv = sp.num_vars();
  const Vector& l = sp.lower;
  const Vector& u = sp.upper;
  const Vector q = sp.q_diag.value_or(Vector(nv, 0.0));

  IpmRawResult res;
  res.x.assign(nv, 0.0);
  res.yd.assign(m, 0.0);
  res.zl.assign(nv, 0.0);
  res.zu.assign(nv, 0.0);
  res.min_interior = kInf;

  int npairs = 0;
  for (int j = 0; j < nv; ++j) {
    const bool fl = std::isfinite(l[j]), fu = std::isfinite(u[j]);
    if (fl && fu) {
      res.x[j] = 0.5 * (l[j] + u[j]);
      res.zl[j] = res.zu[j] = 1.0;
      npairs += 2;
    } else if (fl) {
      res.x[j] = l[j] + 1.0;
      res.zl[j] = 1.0;
      npairs += 1;
    } else if (fu) {
      res.x[j] = u[j] - 1.0;
      res.zu[j] = 1.0;
      npairs += 1;
    }
  }
  if (npairs == 0) npairs = 1;

  const double bnorm = norm_inf(sp.b);
  const double cnorm = norm_inf(sp.c);
  const int iter_cap = opts.fixed_iters.value_or(opts.max_iters);

  for (int iter = 0; iter < iter_cap; ++iter) {
    // Residuals of the current iterate.
    Vector rp = sp.b;
    {
      const Vector ax = matvec(sp.a, res.x);
      for (int i = 0; i < m; ++i) rp[i] -= ax[i];
    }
    Vector rd(nv);
    {
      const Vector aty = matvec_transpose(sp.a, res.yd);
      for (int j = 0; j < nv; ++j)
        rd[j] = sp.c[j] + q[j] * res.x[j] - aty[j] - res.zl[j] + res.zu[j];
    }

    double comp_sum = 0.0;
    double obj = dot(sp.c, res.x);
    for (int j = 0; j < nv; ++j) {
      obj += 0.5 * q[j] * res.x[j] * res.x[j];
      if (std::isfinite(l[j])) comp_sum += (res.x[j] - l[j]) * res.zl[j];
      if (std::isfinite(u[j])) comp_sum += (u[j] - res.x[j]) * res.zu[j];
    }
    const double mu_avg = comp_sum / npairs;
    res.mu_history.push_back(mu_avg);

    if (!opts.fixed_iters) {
      const bool p_ok = norm_inf(rp) <= opts.tol_feas * (1.0 + bnorm);
      const bool d_ok = norm_inf(rd) <= opts.tol_feas * (1.0 + cnorm);
      const bool c_ok = mu_avg <= opts.tol_comp * (1.0 + std::abs(obj));
      if (p_ok && d_ok && c_ok) {
        res.status = SolveStatus::Converged;
        res.iterations = iter;
        return res;
      }
    }

    const double mu = opts.sigma_centering * mu_avg;

    // Scaling matrices and the eliminated right-hand side.
    Vector dinv(nv), g(nv);
    for (int j = 0; j < nv; ++j) {
      double d = q[j] + opts.regularization;
      double gj = -rd[j];
      if (std::isfinite(l[j])) {
        const double sl = res.x[j] - l[j];
        d += res.zl[j] / sl;
        gj += mu / sl - res.zl[j];
      }
      if (std::isfinite(u[j])) {
        const double su = u[j] - res.x[j];
        d += res.zu[j] / su;
        gj -= mu / su - res.zu[j];
      }
      dinv[j] = 1.0 / d;
      g[j] = gj;
    }

    const DenseMatrix H = form_normal_matrix(sp.a, dinv, Vector(m, opts.regularization));
    const CholFactor f = chol_with_regularization(H, 0.0);

    Vector rhs = rp;
    {
      Vector dg(nv);
      for (int j = 0; j < nv; ++j) dg[j] = dinv[j] * g[j];
      const Vector adg = matvec(sp.a, dg);
      for (int i = 0; i < m; ++i) rhs[i] -= adg[i];
    }
    const Vector dy = refined_chol_solve(H, f, rhs);

    Vector dx(nv);
    {
      const Vector aty = matvec_transpose(sp.a, dy);
      for (int j = 0; j < nv; ++j) dx[j] = dinv[j] * (aty[j] + g[j]);
    }
    Vector dzl(nv, 0.0), dzu(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(l[j])) {
        const double sl = res.x[j] - l[j];
        dzl[j] = (mu - sl * res.zl[j] - res.zl[j] * dx[j]) / sl;
      }
      if (std::isfinite(u[j])) {
        const double su = u[j] - res.x[j];
        dzu[j] = (mu - su * res.zu[j] + res.zu[j] * dx[j]) / su;
      }
    }

    // Fraction-to-boundary step lengths, primal and dual separately.
    double ap = 1.0 / opts.step_fraction, ad = 1.0 / opts.step_fraction;
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(l[j]) && dx[j] < 0.0) ap = std::min(ap, (res.x[j] - l[j]) / -dx[j]);
      if (std::isfinite(u[j]) && dx[j] > 0.0) ap = std::min(ap, (u[j] - res.x[j]) / dx[j]);
      if (dzl[j] < 0.0) ad = std::min(ad, res.zl[j] / -dzl[j]);
      if (dzu[j] < 0.0) ad = std::min(ad, res.zu[j] / -dzu[j]);
    }
    ap = std::min(1.0, opts.step_fraction * ap);
    ad = std::min(1.0, opts.step_fraction * ad);

    for (int j = 0; j < nv; ++j) {
      res.x[j] += ap * dx[j];
      res.zl[j] += ad * dzl[j];
      res.zu[j] += ad * dzu[j];
    }
    for (int i = 0; i < m; ++i) res.yd[i] += ad * dy[i];

    // Strict interiority must survive every accepted step.
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(l[j])) {
        res.min_interior = std::min(res.min_interior, res.x[j] - l[j]);
        res.min_interior = std::min(res.min_interior, res.zl[j]);
      }
      if (std::isfinite(u[j])) {
        res.min_interior = std::min(res.min_interior, u[j] - res.x[j]);
        res.min_interior = std::min(res.min_interior, res.zu[j]);
      }
    }
    if (res.min_interior <= 0.0)
      throw IllConditionedError("ipm: lost strict interiority");

    res.iterations = iter + 1;
  }

  res.status = SolveStatus::IterationLimit;
  return res;
}

DualCertificate make_ds_certificate(const ProblemInstance& inst, const Vector& z_raw) {
  DualCertificate cert;
  cert.z = z_raw;
  Vector r = matvec(inst.x, cert.z);
  const double viol = norm_inf(matvec_transpose(inst.x, r));
  if (viol > inst.lambda) {
    const double scale = inst.lambda / viol * (1.0 - 1e-12);
    for (double& v : cert.z) v *= scale;
    for (double& v : r) v *= scale;
  }
  cert.r = std::move(r);
  return cert;
}

Solution ipm_solve(const ProblemInstance& inst, const StandardProblem& sp,
                   const IpmOptions& opts) {
  const IpmRawResult raw = ipm_solve_raw(sp, opts);

  Solution sol;
  const RecoveredBeta rec = recover_beta(sp, raw.x);
  sol.beta = rec.beta;
  sol.iterations = raw.iterations;
  sol.status = raw.status;
  sol.solver_name = "ipm-" + sp.name;

  double obj = dot(sp.c, raw.x);
  if (sp.q_diag)
    for (int j = 0; j < sp.num_vars(); ++j)
      obj += 0.5 * (*sp.q_diag)[j] * raw.x[j] * raw.x[j];
  sol.objective = obj;

  sol.diagnostics["l1_surrogate"] = rec.l1_surrogate;
  sol.diagnostics["min_interior"] = raw.min_interior;
  sol.diagnostics["mu_final"] = raw.mu_history.empty() ? 0.0 : raw.mu_history.back();
  for (size_t k = 0; k < raw.mu_history.size(); ++k) {
    char key[32];
    std::snprintf(key, sizeof key, "mu_%03zu", k);
    sol.diagnostics[key] = raw.mu_history[k];
  }

  // DS dual certificates from the equality duals.
  if (sp.name == "ds1") {
    Vector z(raw.yd);
    for (double& v : z) v *= inst.lambda;
    sol.cert = make_ds_certificate(inst, z);
  } else if (sp.name == "ds2") {
    Vector z(inst.p);
    for (int j = 0; j < inst.p; ++j) z[j] = -inst.lambda * raw.yd[inst.n + j];
    sol.cert = make_ds_certificate(inst, z);
  }

  finalize_solution(inst, sol);
  return sol;
}

ReducedStepDiagnostics reduced_step_experiment(const DenseMatrix& x, const Vector& d12,
                                               const Vector& d34, const Vector& r3,
                                               const Vector& delta_beta_direct) {
  const int n = x.rows(), p = x.cols();
  ReducedStepDiagnostics diag;

  double dmin = kInf, dmax = 0.0;
  for (double v : d12) {
    dmin = std::min(dmin, v);
    dmax = std::max(dmax, v);
  }
  diag.d12_condition = dmax / dmin;

  // M = X D34 X', K = X D12^{-1} X'.
  DenseMatrix M(n, n), K(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      double sm = 0.0, sk = 0.0;
      for (int j = 0; j < p; ++j) {
        sm += x(i, j) * d34[j] * x(k, j);
        sk += x(i, j) / d12[j] * x(k, j);
      }
      M(i, k) = M(k, i) = sm;
      K(i, k) = K(k, i) = sk;
    }
  }
  // G = I + M K, unsymmetric.
  DenseMatrix G = matmul(M, K);
  for (int i = 0; i < n; ++i) G(i, i) += 1.0;

  Vector dinv_r3(p);
  for (int j = 0; j < p; ++j) dinv_r3[j] = r3[j] / d12[j];
  const Vector rhs = matvec(M, matvec(x, dinv_r3));

  Vector delta_red;
  try {
    const Vector t = lu_solve(lu_factor(G), rhs);
    const Vector xt = matvec_transpose(x, t);
    delta_red = dinv_r3;
    for (int j = 0; j < p; ++j) delta_red[j] -= xt[j] / d12[j];
  } catch (const SingularMatrixError&) {
    diag.reduced_singular = true;
    diag.relative_discrepancy = kInf;
    return diag;
  }

  double diff = 0.0;
  for (int j = 0; j < p; ++j)
    diff = std::max(diff, std::abs(delta_red[j] - delta_beta_direct[j]));
  diag.relative_discrepancy = diff / std::max(norm_inf(delta_beta_direct), 1e-300);
  return diag;
}

Solution ipm_ds_solve(const DsBoxProblem& ds, const IpmOptions& opts) {
  const int n = ds.x.rows(), p = ds.x.cols();
  if (ds.lambda <= 0.0)
    throw std::invalid_argument("ipm_ds_solve: requires lambda > 0");

  // Strictly feasible start: least-squares beta puts X'(y - X beta)
  // at zero, u slightly above |beta|.
  Vector beta(p, 0.0);
  {
    const DenseMatrix xxt = form_normal_matrix(ds.x, Vector(p, 1.0), Vector(n, 1e-12));
    const Vector t = solve_chol(chol_factor(xxt), ds.y);
    beta = matvec_transpose(ds.x, t);
  }
  double bmax = norm_inf(beta);
  Vector u(p);
  const double pad = 0.1 * std::max(bmax, 1e-2);
  for (int j = 0; j < p; ++j) u[j] = 1.05 * std::abs(beta[j]) + pad;

  Vector m1(p, 0.5), m2(p, 0.5), m3(p, 1.0 / ds.lambda), m4(p, 1.0 / ds.lambda);

  Solution sol;
  sol.solver_name = "ipm-ds";
  double min_interior = kInf;
  const int iter_cap = opts.fixed_iters.value_or(opts.max_iters);
  std::vector<double> reduced_disc;
  std::vector<double> d12_conds;
  Vector mu_history;
  int iters_done = 0;
  bool converged = false;

  Vector f1(p), f2(p), f3(p), f4(p);
  auto eval_constraints = [&]() {
    const Vector st = matvec_transpose(ds.x, box_residual(ds, beta));
    for (int j = 0; j < p; ++j) {
      f1[j] = beta[j] - u[j];
      f2[j] = -beta[j] - u[j];
      f3[j] = st[j] - ds.lambda;
      f4[j] = -st[j] - ds.lambda;
    }
  };
  eval_constraints();

  for (int iter = 0; iter < iter_cap; ++iter) {
    // Dual residuals; g v shorthand for X'X v.
    Vector m34(p);
    for (int j = 0; j < p; ++j) m34[j] = m3[j] - m4[j];
    const Vector g_m34 = matvec_transpose(ds.x, matvec(ds.x, m34));
    Vector rc_beta(p), rc_u(p);
    double rd_norm = 0.0;
    for (int j = 0; j < p; ++j) {
      rc_beta[j] = m1[j] - m2[j] - g_m34[j];
      rc_u[j] = 1.0 - m1[j] - m2[j];
      rd_norm = std::max(rd_norm, std::max(std::abs(rc_beta[j]), std::abs(rc_u[j])));
    }

    double gap = 0.0, obj = 0.0;
    for (int j = 0; j < p; ++j) {
      gap += m1[j] * -f1[j] + m2[j] * -f2[j] + m3[j] * -f3[j] + m4[j] * -f4[j];
      obj += u[j];
    }
    const double mu_avg = gap / (4.0 * p);
    mu_history.push_back(mu_avg);

    if (!opts.fixed_iters && rd_norm <= opts.tol_feas * 2.0 &&
        mu_avg <= opts.tol_comp * (1.0 + std::abs(obj))) {
      converged = true;
      break;
    }

    const double mu = opts.sigma_centering * mu_avg;

    Vector sigma1(p), sigma2(p), sigma3(p), sigma4(p), d12(p), d34(p);
    for (int j = 0; j < p; ++j) {
      sigma1[j] = m1[j] / -f1[j];
      sigma2[j] = m2[j] / -f2[j];
      sigma3[j] = m3[j] / -f3[j];
      sigma4[j] = m4[j] / -f4[j];
      const double sum12 = sigma1[j] + sigma2[j];
      d12[j] = sum12 - (sigma2[j] - sigma1[j]) * (sigma2[j] - sigma1[j]) / sum12;
      d34[j] = sigma3[j] + sigma4[j];
    }

    // Right-hand sides after eliminating the multipliers and u.
    Vector mu34(p);
    for (int j = 0; j < p; ++j) mu34[j] = mu / f3[j] - mu / f4[j];
    const Vector g_mu34 = matvec_transpose(ds.x, matvec(ds.x, mu34));
    Vector r3(p);
    for (int j = 0; j < p; ++j) {
      const double w1 = mu / f1[j] - mu / f2[j] - g_mu34[j];
      const double w2 = -1.0 - mu / f1[j] - mu / f2[j];
      const double sum12 = sigma1[j] + sigma2[j];
      r3[j] = w1 - (sigma2[j] - sigma1[j]) / sum12 * w2;
    }

    // H = D12 + X'(X D34 X')X, p x p.
    DenseMatrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < p; ++j) s += ds.x(i, j) * d34[j] * ds.x(k, j);
        M(i, k) = M(k, i) = s;
      }
    const DenseMatrix MX = matmul(M, ds.x);
    DenseMatrix H = matmul_at_b(ds.x, MX);
    for (int j = 0; j < p; ++j) H(j, j) += d12[j];

    const CholFactor f = chol_with_regularization(H, 0.0);
    const Vector dbeta = refined_chol_solve(H, f, r3);

    if (opts.reduced_experiment) {
      const ReducedStepDiagnostics rd = reduced_step_experiment(ds.x, d12, d34, r3, dbeta);
      reduced_disc.push_back(rd.relative_discrepancy);
      d12_conds.push_back(rd.d12_condition);
    }

    Vector du(p);
    for (int j = 0; j < p; ++j) {
      const double sum12 = sigma1[j] + sigma2[j];
      const double w2 = -1.0 - mu / f1[j] - mu / f2[j];
      du[j] = (w2 - (sigma2[j] - sigma1[j]) * dbeta[j]) / sum12;
    }

    const Vector g_dbeta = matvec_transpose(ds.x, matvec(ds.x, dbeta));
    Vector df1(p), df2(p), df3(p), df4(p), dm1(p), dm2(p), dm3(p), dm4(p);
    for (int j = 0; j < p; ++j) {
      df1[j] = dbeta[j] - du[j];
      df2[j] = -dbeta[j] - du[j];
      df3[j] = -g_dbeta[j];
      df4[j] = g_dbeta[j];
      dm1[j] = -mu / f1[j] - m1[j] + sigma1[j] * df1[j];
      dm2[j] = -mu / f2[j] - m2[j] + sigma2[j] * df2[j];
      dm3[j] = -mu / f3[j] - m3[j] + sigma3[j] * df3[j];
      dm4[j] = -mu / f4[j] - m4[j] + sigma4[j] * df4[j];
    }

    double ap = 1.0 / opts.step_fraction, ad = 1.0 / opts.step_fraction;
    auto limit_primal = [&](const Vector& fv, const Vector& dfv) {
      for (int j = 0; j < p; ++j)
        if (dfv[j] > 0.0) ap = std::min(ap, -fv[j] / dfv[j]);
    };
    auto limit_dual = [&](const Vector& mv, const Vector& dmv) {
      for (int j = 0; j < p; ++j)
        if (dmv[j] < 0.0) ad = std::min(ad, mv[j] / -dmv[j]);
    };
    limit_primal(f1, df1);
    limit_primal(f2, df2);
    limit_primal(f3, df3);
    limit_primal(f4, df4);
    limit_dual(m1, dm1);
    limit_dual(m2, dm2);
    limit_dual(m3, dm3);
    limit_dual(m4, dm4);
    ap = std::min(1.0, opts.step_fraction * ap);
    ad = std::min(1.0, opts.step_fraction * ad);

    for (int j = 0; j < p; ++j) {
      beta[j] += ap * dbeta[j];
      u[j] += ap * du[j];
      m1[j] += ad * dm1[j];
      m2[j] += ad * dm2[j];
      m3[j] += ad * dm3[j];
      m4[j] += ad * dm4[j];
    }
    eval_constraints();
    for (int j = 0; j < p; ++j) {
      min_interior = std::min({min_interior, -f1[j], -f2[j], -f3[j], -f4[j], m1[j],
                               m2[j], m3[j], m4[j]});
    }
    if (min_interior <= 0.0)
      throw IllConditionedError("ipm_ds_solve: lost strict interiority");

    iters_done = iter + 1;
  }

  sol.beta = beta;
  sol.iterations = iters_done;
  sol.status = converged ? SolveStatus::Converged : SolveStatus::IterationLimit;
  double obj = 0.0;
  for (int j = 0; j < p; ++j) obj += u[j];
  sol.objective = obj;
  sol.diagnostics["min_interior"] = min_interior;
  for (size_t k = 0; k < mu_history.size(); ++k) {
    char key[32];
    std::snprintf(key, sizeof key, "mu_%03zu", k);
    sol.diagnostics[key] = mu_history[k];
  }
  for (size_t k = 0; k < reduced_disc.size(); ++k) {
    char key[48];
    std::snprintf(key, sizeof key, "reduced_disc_%03zu", k);
    sol.diagnostics[key] = reduced_disc[k];
    std::snprintf(key, sizeof key, "d12_cond_%03zu", k);
    sol.diagnostics[key] = d12_conds[k];
  }

  // Multiplier difference for the dual certificate; stored raw so the
  // instance-aware wrapper can scale it.
  sol.cert.z.resize(p);
  for (int j = 0; j < p; ++j) sol.cert.z[j] = ds.lambda * (m3[j] - m4[j]);
  sol.cert.r = matvec(ds.x, sol.cert.z);
  return sol;
}

Solution ipm_ds_solve(const ProblemInstance& inst, const IpmOptions& opts) {
  Solution sol = ipm_ds_solve(build_ds_box(inst), opts);
  sol.cert = make_ds_certificate(inst, sol.cert.z);
  finalize_solution(inst, sol);
  return sol;
}

}  // namespace sparsebench
