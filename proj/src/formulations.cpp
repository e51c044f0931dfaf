#include "sparsebench/formulations.hpp"

#include <cmath>
#include <limits>

namespace sparsebench {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const VariableBlock& StandardProblem::block(const std::string& key) const {
  auto it = block_map.find(key);
  if (it == block_map.end())
    throw std::invalid_argument("StandardProblem: missing block " + key);
  return it->second;
}

StandardProblem build_ds1(const ProblemInstance& inst) {
  const int n = inst.n, p = inst.p;
  const DenseMatrix xtx = matmul_at_b(inst.x, inst.x);  // p x p
  (void)n;

  StandardProblem sp;
  sp.name = "ds1";
  sp.a = DenseMatrix(p, 3 * p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      sp.a(i, j) = xtx(i, j);
      sp.a(i, p + j) = -xtx(i, j);
    }
    sp.a(i, 2 * p + i) = 1.0;
  }
  sp.b = matvec_transpose(inst.x, inst.y);
  sp.c.assign(3 * p, 0.0);
  for (int j = 0; j < 2 * p; ++j) sp.c[j] = 1.0;
  sp.lower.assign(3 * p, 0.0);
  sp.upper.assign(3 * p, kInf);
  for (int j = 0; j < p; ++j) {
    sp.lower[2 * p + j] = -inst.lambda;
    sp.upper[2 * p + j] = inst.lambda;
  }
  sp.block_map["v"] = {0, p};
  sp.block_map["w"] = {p, p};
  sp.block_map["s"] = {2 * p, p};
  return sp;
}

StandardProblem build_ds2(const ProblemInstance& inst) {
  const int n = inst.n, p = inst.p;
  const int nv = 2 * p + n + p;

  StandardProblem sp;
  sp.name = "ds2";
  sp.a = DenseMatrix(n + p, nv);
  // Block row 1: [X, -X, I, 0]
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      sp.a(i, j) = inst.x(i, j);
      sp.a(i, p + j) = -inst.x(i, j);
    }
    sp.a(i, 2 * p + i) = 1.0;
  }
  // Block row 2: [0, 0, X', I]
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) sp.a(n + j, 2 * p + i) = inst.x(i, j);
    sp.a(n + j, 2 * p + n + j) = 1.0;
  }
  sp.b.assign(n + p, 0.0);
  for (int i = 0; i < n; ++i) sp.b[i] = inst.y[i];
  sp.c.assign(nv, 0.0);
  for (int j = 0; j < 2 * p; ++j) sp.c[j] = 1.0;
  sp.lower.assign(nv, 0.0);
  sp.upper.assign(nv, kInf);
  for (int i = 0; i < n; ++i) {
    sp.lower[2 * p + i] = -kInf;  // r free
  }
  for (int j = 0; j < p; ++j) {
    sp.lower[2 * p + n + j] = -inst.lambda;
    sp.upper[2 * p + n + j] = inst.lambda;
  }
  sp.block_map["v"] = {0, p};
  sp.block_map["w"] = {p, p};
  sp.block_map["r"] = {2 * p, n};
  sp.block_map["s"] = {2 * p + n, p};
  return sp;
}

StandardProblem build_ds3(const ProblemInstance& inst, bool bound_r) {
  const int n = inst.n, p = inst.p;
  const int nv = 2 * p + n;

  StandardProblem sp;
  sp.name = "ds3";
  sp.a = DenseMatrix(n, nv);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      sp.a(i, j) = inst.x(i, j);
      sp.a(i, p + j) = -inst.x(i, j);
    }
    sp.a(i, 2 * p + i) = 1.0;
  }
  sp.b = inst.y;
  sp.c.assign(nv, 0.0);
  for (int j = 0; j < 2 * p; ++j) sp.c[j] = inst.lambda;
  sp.q_diag = Vector(nv, 0.0);
  for (int i = 0; i < n; ++i) (*sp.q_diag)[2 * p + i] = 1.0;
  sp.lower.assign(nv, 0.0);
  sp.upper.assign(nv, kInf);
  const double rb = bound_r ? norm2(inst.y) : kInf;
  for (int i = 0; i < n; ++i) {
    sp.lower[2 * p + i] = -rb;
    sp.upper[2 * p + i] = rb;
  }
  sp.block_map["v"] = {0, p};
  sp.block_map["w"] = {p, p};
  sp.block_map["r"] = {2 * p, n};
  return sp;
}

DsBoxProblem build_ds_box(const ProblemInstance& inst) {
  return DsBoxProblem{inst.x, inst.y, inst.lambda};
}

RecoveredBeta recover_beta(const StandardProblem& sp, const Vector& x) {
  const VariableBlock& v = sp.block("v");
  const VariableBlock& w = sp.block("w");
  if (v.length != w.length) throw DimensionMismatch("recover_beta: v/w length mismatch");
  if (static_cast<int>(x.size()) != sp.num_vars())
    throw DimensionMismatch("recover_beta: x length mismatch");
  RecoveredBeta out;
  out.beta.resize(v.length);
  for (int j = 0; j < v.length; ++j) {
    out.beta[j] = x[v.offset + j] - x[w.offset + j];
    out.l1_surrogate += x[v.offset + j] + x[w.offset + j];
  }
  return out;
}

}  // namespace sparsebench
