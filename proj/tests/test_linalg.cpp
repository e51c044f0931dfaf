#include <doctest.h>

#include <cmath>
#include <random>

#include "sparsebench/linalg.hpp"

using namespace sparsebench;

namespace {

DenseMatrix random_matrix(int rows, int cols, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  DenseMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = nd(gen);
  return a;
}

// Naive triple-loop product used as the reference for the blocked kernels.
DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace

TEST_CASE("matvec and matmul agree with naive recomputation") {
  const DenseMatrix a = random_matrix(7, 11, 42);
  const DenseMatrix b = random_matrix(11, 5, 43);
  const DenseMatrix c = random_matrix(7, 5, 44);
  CHECK(max_diff(matmul(a, b), naive_matmul(a, b)) < 1e-13);
  CHECK(max_diff(matmul_at_b(a, c), naive_matmul(a.transposed(), c)) < 1e-13);

  Vector x(11);
  for (int j = 0; j < 11; ++j) x[j] = 0.1 * j - 0.5;
  const Vector y = matvec(a, x);
  for (int i = 0; i < 7; ++i) {
    double s = 0.0;
    for (int j = 0; j < 11; ++j) s += a(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-13));
  }
  Vector z(7);
  for (int i = 0; i < 7; ++i) z[i] = 1.0 / (i + 1);
  const Vector w = matvec_transpose(a, z);
  for (int j = 0; j < 11; ++j) {
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += a(i, j) * z[i];
    CHECK(w[j] == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("matvec rejects mismatched dimensions") {
  const DenseMatrix a = random_matrix(3, 4, 1);
  CHECK_THROWS_AS(matvec(a, Vector(3)), DimensionMismatch);
  CHECK_THROWS_AS(matvec_transpose(a, Vector(4)), DimensionMismatch);
  CHECK_THROWS_AS(dot(Vector(2), Vector(3)), DimensionMismatch);
}

TEST_CASE("check_finite flags NaN") {
  DenseMatrix a = random_matrix(2, 2, 7);
  CHECK_NOTHROW(a.check_finite());
  a(1, 0) = std::nan("");
  CHECK_THROWS(a.check_finite());
}

TEST_CASE("QR reproduces A and yields orthonormal thin Q") {
  const DenseMatrix a = random_matrix(12, 5, 99);
  const QrFactors f = qr_factor(a);
  const DenseMatrix q = f.thin_q();
  const DenseMatrix r = f.r();
  CHECK(max_diff(matmul(q, r), a) < 1e-12);
  const DenseMatrix qtq = matmul_at_b(q, q);
  CHECK(max_diff(qtq, DenseMatrix::identity(5)) < 1e-12);
  // R upper triangular
  for (int i = 1; i < 5; ++i)
    for (int j = 0; j < i; ++j) CHECK(r(i, j) == 0.0);
}

TEST_CASE("QR least squares matches normal equations") {
  const DenseMatrix a = random_matrix(10, 4, 5);
  Vector b(10);
  for (int i = 0; i < 10; ++i) b[i] = std::sin(i + 1.0);
  const Vector z = qr_factor(a).solve_least_squares(b);
  // residual orthogonal to the column space
  Vector r = b;
  axpy(-1.0, matvec(a, z), r);
  const Vector atr = matvec_transpose(a, r);
  CHECK(norm_inf(atr) < 1e-12);
}

TEST_CASE("QR detects rank deficiency") {
  DenseMatrix a = random_matrix(6, 3, 11);
  for (int i = 0; i < 6; ++i) a(i, 2) = 2.0 * a(i, 0) - a(i, 1);
  CHECK_THROWS_AS(qr_factor(a), RankDeficientError);
}

TEST_CASE("Cholesky solves SPD systems and rejects indefinite ones") {
  const DenseMatrix a = random_matrix(8, 8, 3);
  DenseMatrix h = matmul_at_b(a, a);
  for (int i = 0; i < 8; ++i) h(i, i) += 0.5;
  Vector b(8);
  for (int i = 0; i < 8; ++i) b[i] = i - 3.5;
  const Vector x = solve_chol(chol_factor(h), b);
  Vector res = matvec(h, x);
  axpy(-1.0, b, res);
  CHECK(norm_inf(res) < 1e-11);

  DenseMatrix bad = h;
  bad(4, 4) = -1e3;
  CHECK_THROWS_AS(chol_factor(bad), NotPositiveDefiniteError);
}

TEST_CASE("triangular solves handle both sides and transposes") {
  DenseMatrix u(4, 4);
  u(0, 0) = 2;  u(0, 1) = 1; u(0, 2) = -1; u(0, 3) = 3;
  u(1, 1) = -3; u(1, 2) = 2; u(1, 3) = 0.5;
  u(2, 2) = 1.5; u(2, 3) = -2;
  u(3, 3) = 4;
  Vector b{1, 2, 3, 4};
  for (bool tr : {false, true}) {
    const Vector x = solve_tri(u, b, TriSide::Upper, tr);
    Vector res(4, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) res[i] += (tr ? u(j, i) : u(i, j)) * x[j];
    axpy(-1.0, b, res);
    CHECK(norm_inf(res) < 1e-13);
  }
  DenseMatrix sing = u;
  sing(2, 2) = 0.0;
  CHECK_THROWS_AS(solve_tri(sing, b, TriSide::Upper, false), SingularMatrixError);
}

TEST_CASE("LU solve round-trips forward and transpose") {
  const DenseMatrix a = random_matrix(9, 9, 17);
  const LuFactors f = lu_factor(a);
  Vector b(9);
  for (int i = 0; i < 9; ++i) b[i] = std::cos(i * 0.7);
  Vector res = matvec(a, lu_solve(f, b));
  axpy(-1.0, b, res);
  CHECK(norm_inf(res) < 1e-11);
  res = matvec_transpose(a, lu_solve_transpose(f, b));
  axpy(-1.0, b, res);
  CHECK(norm_inf(res) < 1e-11);

  DenseMatrix sing(3, 3);
  sing(0, 0) = 1;
  sing(1, 1) = 1;  // third row all zero
  CHECK_THROWS_AS(lu_factor(sing), SingularMatrixError);
}

TEST_CASE("vector norms") {
  Vector v{3.0, -4.0, 0.0};
  CHECK(norm2(v) == doctest::Approx(5.0));
  CHECK(norm1(v) == doctest::Approx(7.0));
  CHECK(norm_inf(v) == doctest::Approx(4.0));
}
