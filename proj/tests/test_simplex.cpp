#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsebench/certify.hpp"
#include "sparsebench/simplex.hpp"

using namespace sparsebench;

namespace {

ProblemInstance tiny(uint64_t seed) {
  ProblemInstance inst = generate_instance(3, 5, 1, 0.01, 0.0, seed);
  inst.lambda = 0.45 * norm_inf(matvec_transpose(inst.x, inst.y));
  return inst;
}

}  // namespace

TEST_CASE("initial basis: r = y, s = -X'y, duals zero") {
  const ProblemInstance inst = generate_instance(5, 12, 2, 0.005, 3e-3, 83);
  BasisState state = initial_basis(inst);
  factorize_basis(inst, state);
  CHECK(state.s_size() == 0);
  CHECK(static_cast<int>(state.basic_s.size()) == inst.p);
  const Vector xty = matvec_transpose(inst.x, inst.y);
  for (int i = 0; i < inst.n; ++i) CHECK(state.xr[i] == doctest::Approx(inst.y[i]));
  for (int j = 0; j < inst.p; ++j) CHECK(state.xs[j] == doctest::Approx(-xty[j]));
  CHECK(norm_inf(state.pi1) == 0.0);
  CHECK(norm_inf(state.pi2) == 0.0);
  for (int j = 0; j < 2 * inst.p; ++j) CHECK(state.status[j] == VarStatus::AtLower);
}

TEST_CASE("structured solves match a dense assembled basis") {
  const ProblemInstance inst = generate_instance(4, 9, 2, 0.005, 3e-3, 89);
  SimplexOptions opts;
  opts.tol = 1e-8;
  opts.validate = true;
  SimplexTrace trace;
  const Solution sol = dual_simplex_solve(inst, opts, &trace);
  REQUIRE_FALSE(trace.pivots.empty());
  for (const PivotRecord& rec : trace.pivots) {
    CHECK(rec.factor_residual < 1e-9);
    // n + p small, so every pivot also ran the dense comparison
    CHECK(rec.dense_solve_diff >= 0.0);
    CHECK(rec.dense_solve_diff < 1e-9);
    CHECK(rec.r_all_basic);
    CHECK(rec.dual_infeasibility < 1e-9);
  }
  CHECK(sol.status == SolveStatus::ToleranceMet);
}

TEST_CASE("tight tolerance reproduces the brute-force DS optimum") {
  for (uint64_t seed : {91, 92, 93}) {
    const ProblemInstance inst = tiny(seed);
    SimplexOptions opts;
    opts.tol = 1e-8;
    const Solution sol = dual_simplex_solve(inst, opts);
    const auto opt = oracles::ds_brute_force(inst);
    REQUIRE(opt.feasible_point_found);
    CHECK(sol.objective == doctest::Approx(opt.objective).epsilon(1e-6));
    CHECK(ds_feasibility_violation(inst, sol.beta) < 1e-6);
    REQUIRE(sol.has_cert());
    CHECK(ds_gap(inst, sol.beta, sol.cert) < 1e-6 * (1.0 + sol.objective));
  }
}

TEST_CASE("steepest-edge pricing reaches the same objective") {
  const ProblemInstance inst = tiny(95);
  SimplexOptions a, b;
  a.tol = b.tol = 1e-8;
  b.pricing = Pricing::SteepestEdge;
  const Solution sa = dual_simplex_solve(inst, a);
  const Solution sb = dual_simplex_solve(inst, b);
  CHECK(sa.objective == doctest::Approx(sb.objective).epsilon(1e-9));
}

TEST_CASE("loose tolerance stops early with a bounded violation") {
  const ProblemInstance inst = generate_instance(20, 64, 5, 0.005, 3e-3, 97);
  SimplexOptions loose, strict;
  loose.tol = 0.1;
  strict.tol = 1e-6;
  const Solution sl = dual_simplex_solve(inst, loose);
  const Solution ss = dual_simplex_solve(inst, strict);
  CHECK(sl.iterations <= ss.iterations);
  CHECK(ds_feasibility_violation(inst, sl.beta) <= 0.1 + 1e-9);
  CHECK(ds_feasibility_violation(inst, ss.beta) <= 1e-6 + 1e-12);
  CHECK(sl.status == SolveStatus::ToleranceMet);
}

TEST_CASE("solution profile splits entries at the threshold") {
  Solution sol;
  sol.beta = {0.0, 1.0, -0.01, 0.0, 0.049, -0.9};
  const SolutionProfile prof = solution_profile(sol, 0.05);
  REQUIRE(prof.significant.size() == 2);
  CHECK(prof.significant[0].first == 1);
  CHECK(prof.significant[1].first == 5);
  REQUIRE(prof.small.size() == 2);
  CHECK(prof.small[0].first == 2);
  CHECK(prof.small[1].first == 4);

  Solution zero;
  zero.beta.assign(4, 0.0);
  const SolutionProfile empty = solution_profile(zero, 0.05);
  CHECK(empty.significant.empty());
  CHECK(empty.small.empty());
}

TEST_CASE("determinism: identical runs pivot identically") {
  const ProblemInstance inst = generate_instance(10, 30, 3, 0.005, 3e-3, 101);
  SimplexOptions opts;
  opts.tol = 1e-8;
  SimplexTrace t1, t2;
  const Solution s1 = dual_simplex_solve(inst, opts, &t1);
  const Solution s2 = dual_simplex_solve(inst, opts, &t2);
  CHECK(s1.beta == s2.beta);
  REQUIRE(t1.pivots.size() == t2.pivots.size());
  for (size_t k = 0; k < t1.pivots.size(); ++k) {
    CHECK(t1.pivots[k].entering == t2.pivots[k].entering);
    CHECK(t1.pivots[k].leaving == t2.pivots[k].leaving);
  }
}
