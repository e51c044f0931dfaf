#include "sparsebench/certify.hpp"

#include <cmath>

namespace sparsebench {

double bpdn_objective(const ProblemInstance& inst, const Vector& beta) {
  const Vector r = residual(inst, beta);
  return inst.lambda * norm1(beta) + 0.5 * dot(r, r);
}

double bpdn_gap(const ProblemInstance& inst, const Vector& beta, const Vector& r) {
  const Vector xtr = matvec_transpose(inst.x, r);
  if (norm_inf(xtr) > inst.lambda * (1.0 + 1e-9) + 1e-15)
    throw std::invalid_argument("bpdn_gap: dual vector violates ||X'r||_inf <= lambda");
  const double dual_obj = dot(inst.y, r) - 0.5 * dot(r, r);
  return bpdn_objective(inst, beta) - dual_obj;
}

double ds_gap(const ProblemInstance& inst, const Vector& beta, const DualCertificate& cert) {
  if (inst.lambda <= 0.0) throw std::invalid_argument("ds_gap: requires lambda > 0");
  if (ds_feasibility_violation(inst, beta) > 1e-9)
    throw std::invalid_argument("ds_gap: primal beta is not DS-feasible");
  const Vector xtr = matvec_transpose(inst.x, cert.r);
  if (norm_inf(xtr) > inst.lambda * (1.0 + 1e-9) + 1e-15)
    throw std::invalid_argument("ds_gap: certificate violates ||X'r||_inf <= lambda");
  const Vector xz = matvec(inst.x, cert.z);
  double link = 0.0;
  for (int i = 0; i < inst.n; ++i) link = std::max(link, std::abs(cert.r[i] - xz[i]));
  if (link > 1e-9 * (1.0 + norm_inf(cert.r)))
    throw std::invalid_argument("ds_gap: certificate violates r = X z");
  const double dual_obj = dot(inst.y, cert.r) / inst.lambda - norm1(cert.z);
  return norm1(beta) - dual_obj;
}

double bpdn_kkt_residual(const ProblemInstance& inst, const Vector& beta, double lambda,
                         double zero_tol) {
  const Vector r = residual(inst, beta);
  const Vector st = matvec_transpose(inst.x, r);
  double worst = 0.0;
  for (int j = 0; j < inst.p; ++j) {
    if (std::abs(beta[j]) > zero_tol) {
      const double sgn = beta[j] > 0.0 ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(st[j] - lambda * sgn));
    } else {
      worst = std::max(worst, std::max(0.0, std::abs(st[j]) - lambda));
    }
  }
  return worst;
}

CrossCheckReport cross_check(const ProblemInstance& inst, const Solution& sol_bpdn,
                             const Solution& sol_ds, double tol) {
  CrossCheckReport rep;
  rep.bpdn_ds_violation = ds_feasibility_violation(inst, sol_bpdn.beta);

  const Vector r_bpdn = residual(inst, sol_bpdn.beta);
  const Vector r_ds = residual(inst, sol_ds.beta);
  rep.l1_margin = norm1(sol_bpdn.beta) - norm1(sol_ds.beta);
  rep.r2_margin = 0.5 * dot(r_ds, r_ds) - 0.5 * dot(r_bpdn, r_bpdn);

  rep.ok = rep.bpdn_ds_violation <= tol && rep.l1_margin >= -tol && rep.r2_margin >= -tol;
  return rep;
}

}  // namespace sparsebench
