#include <doctest.h>

#include <cmath>
#include <limits>

#include "sparsebench/formulations.hpp"

using namespace sparsebench;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ProblemInstance tiny() { return generate_instance(4, 9, 2, 0.005, 3e-3, 13); }

// Feasible split of an arbitrary beta: v = beta_+, w = beta_-.
void split(const Vector& beta, Vector& v, Vector& w) {
  v.assign(beta.size(), 0.0);
  w.assign(beta.size(), 0.0);
  for (size_t j = 0; j < beta.size(); ++j)
    (beta[j] >= 0 ? v[j] : w[j]) = std::abs(beta[j]);
}

}  // namespace

TEST_CASE("ds1 dimensions, blocks and constraint content") {
  const ProblemInstance inst = tiny();
  const StandardProblem sp = build_ds1(inst);
  const int p = inst.p;
  CHECK(sp.num_vars() == 3 * p);
  CHECK(sp.num_rows() == p);
  CHECK(sp.block("v").offset == 0);
  CHECK(sp.block("w").offset == p);
  CHECK(sp.block("s").offset == 2 * p);
  CHECK_FALSE(sp.q_diag.has_value());

  // c = (1, 1, 0); bounds: v, w >= 0; s in [-lambda, lambda]
  for (int j = 0; j < p; ++j) {
    CHECK(sp.c[j] == 1.0);
    CHECK(sp.c[p + j] == 1.0);
    CHECK(sp.c[2 * p + j] == 0.0);
    CHECK(sp.lower[j] == 0.0);
    CHECK(sp.upper[j] == kInf);
    CHECK(sp.lower[2 * p + j] == -inst.lambda);
    CHECK(sp.upper[2 * p + j] == inst.lambda);
  }

  // A x = b at a feasible split: X'X(v - w) + s = X'y with s = X'r.
  Vector beta(p, 0.0);
  beta[1] = 0.5;
  beta[4] = -0.25;
  Vector v, w;
  split(beta, v, w);
  const Vector r = residual(inst, beta);
  const Vector s = matvec_transpose(inst.x, r);
  Vector x(3 * p);
  for (int j = 0; j < p; ++j) {
    x[j] = v[j];
    x[p + j] = w[j];
    x[2 * p + j] = s[j];
  }
  Vector ax = matvec(sp.a, x);
  axpy(-1.0, sp.b, ax);
  CHECK(norm_inf(ax) < 1e-12);
}

TEST_CASE("ds2 dimensions and residual/dual coupling rows") {
  const ProblemInstance inst = tiny();
  const StandardProblem sp = build_ds2(inst);
  const int p = inst.p, n = inst.n;
  CHECK(sp.num_vars() == 2 * p + n + p);
  CHECK(sp.num_rows() == n + p);
  CHECK(sp.block("r").length == n);
  // r block is free
  for (int i = 0; i < n; ++i) {
    CHECK(sp.lower[sp.block("r").offset + i] == -kInf);
    CHECK(sp.upper[sp.block("r").offset + i] == kInf);
  }

  Vector beta(p, 0.0);
  beta[0] = -0.3;
  beta[7] = 0.8;
  Vector v, w;
  split(beta, v, w);
  const Vector r = residual(inst, beta);
  const Vector s = matvec_transpose(inst.x, r);
  Vector x(sp.num_vars(), 0.0);
  for (int j = 0; j < p; ++j) {
    x[j] = v[j];
    x[p + j] = w[j];
    x[sp.block("s").offset + j] = -s[j];
  }
  for (int i = 0; i < n; ++i) x[sp.block("r").offset + i] = r[i];
  Vector ax = matvec(sp.a, x);
  axpy(-1.0, sp.b, ax);
  CHECK(norm_inf(ax) < 1e-12);
}

TEST_CASE("ds3 carries the quadratic diagonal on the r block only") {
  const ProblemInstance inst = tiny();
  const StandardProblem sp = build_ds3(inst);
  const int p = inst.p, n = inst.n;
  CHECK(sp.num_vars() == 2 * p + n);
  CHECK(sp.num_rows() == n);
  REQUIRE(sp.q_diag.has_value());
  const Vector& q = *sp.q_diag;
  for (int j = 0; j < 2 * p; ++j) {
    CHECK(q[j] == 0.0);
    CHECK(sp.c[j] == doctest::Approx(inst.lambda));
  }
  for (int i = 0; i < n; ++i) {
    CHECK(q[2 * p + i] > 0.0);
    CHECK(sp.c[2 * p + i] == 0.0);
    CHECK(sp.lower[2 * p + i] == -kInf);
  }

  const StandardProblem bounded = build_ds3(inst, true);
  const double ynorm = norm2(inst.y);
  for (int i = 0; i < n; ++i) {
    CHECK(bounded.lower[2 * p + i] == doctest::Approx(-ynorm));
    CHECK(bounded.upper[2 * p + i] == doctest::Approx(ynorm));
  }
}

TEST_CASE("recover_beta subtracts the split and reports the l1 surrogate") {
  const ProblemInstance inst = tiny();
  const StandardProblem sp = build_ds1(inst);
  Vector x(sp.num_vars(), 0.0);
  x[2] = 0.75;            // v_2
  x[inst.p + 2] = 0.25;   // w_2 overlaps: beta_2 = 0.5, surrogate 1.0
  x[5] = 0.1;
  const RecoveredBeta rb = recover_beta(sp, x);
  CHECK(rb.beta[2] == doctest::Approx(0.5));
  CHECK(rb.beta[5] == doctest::Approx(0.1));
  CHECK(rb.l1_surrogate == doctest::Approx(1.1));
  CHECK(rb.l1_surrogate >= norm1(rb.beta));
}

TEST_CASE("box form copies the instance data") {
  const ProblemInstance inst = tiny();
  const DsBoxProblem box = build_ds_box(inst);
  CHECK(box.lambda == inst.lambda);
  CHECK(box.y == inst.y);
  CHECK(box.x.data() == inst.x.data());
}

TEST_CASE("unknown block name throws") {
  const StandardProblem sp = build_ds1(tiny());
  CHECK_THROWS(sp.block("nope"));
}
