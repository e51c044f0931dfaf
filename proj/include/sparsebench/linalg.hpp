#ifndef SPARSEBENCH_LINALG_HPP
#define SPARSEBENCH_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Dense kernels shared by every solver: Householder QR, Cholesky,
// LU with partial pivoting, triangular solves and matrix products.
// All matrices are row-major, 64-bit floats.

namespace sparsebench {

using Vector = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankDeficientError : std::runtime_error {
  int column;
  explicit RankDeficientError(int col)
      : std::runtime_error("rank-deficient matrix at column " + std::to_string(col)),
        column(col) {}
};

struct NotPositiveDefiniteError : std::runtime_error {
  int pivot;
  explicit NotPositiveDefiniteError(int piv)
      : std::runtime_error("matrix not positive definite at pivot " + std::to_string(piv)),
        pivot(piv) {}
};

struct SingularMatrixError : std::runtime_error {
  int pivot;
  explicit SingularMatrixError(int piv)
      : std::runtime_error("singular matrix at pivot " + std::to_string(piv)),
        pivot(piv) {}
};

class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}
  DenseMatrix(int rows, int cols, Vector entries);

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const double* row_ptr(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
  double* row_ptr(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

  const Vector& data() const { return a_; }
  Vector& data() { return a_; }

  // Throws if any entry is NaN or Inf.
  void check_finite() const;

  DenseMatrix transposed() const;
  double frobenius_norm() const;
  double max_abs() const;

 private:
  int rows_, cols_;
  Vector a_;
};

// y = A x
Vector matvec(const DenseMatrix& A, const Vector& x);
// y = A' x
Vector matvec_transpose(const DenseMatrix& A, const Vector& x);
// C = A B
DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
// C = A' B
DenseMatrix matmul_at_b(const DenseMatrix& A, const DenseMatrix& B);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);
double norm1(const Vector& a);
// a += alpha * b
void axpy(double alpha, const Vector& b, Vector& a);

// Householder QR of an m x n matrix with m >= n. Q is kept as
// reflectors and applied on demand.
class QrFactors {
 public:
  int m() const { return qr_.rows(); }
  int n() const { return qr_.cols(); }

  // R (n x n upper triangular).
  DenseMatrix r() const;
  // Thin Q (m x n) with orthonormal columns.
  DenseMatrix thin_q() const;

  // x (length m) -> Q' x (length m, first n entries meaningful).
  Vector apply_qt(const Vector& x) const;
  // x (length m) -> Q x.
  Vector apply_q(const Vector& x) const;

  // Least-squares solve: minimize ||A z - b||_2, b of length m.
  Vector solve_least_squares(const Vector& b) const;

  friend QrFactors qr_factor(const DenseMatrix& A);

 private:
  DenseMatrix qr_;  // R in the upper triangle, reflectors below
  Vector tau_;
};

// Throws RankDeficientError when a diagonal of R falls below
// 1e-12 times the largest column norm of A.
QrFactors qr_factor(const DenseMatrix& A);

struct CholFactor {
  DenseMatrix l;  // lower triangular, H = L L'
};

// Throws NotPositiveDefiniteError carrying the failing pivot index.
CholFactor chol_factor(const DenseMatrix& H);

// Solves H x = b via the two triangular solves.
Vector solve_chol(const CholFactor& factor, const Vector& b);

enum class TriSide { Lower, Upper };

// Solves T x = b (or T' x = b). Throws SingularMatrixError when a
// diagonal entry is below 1e-14 * max|T|.
Vector solve_tri(const DenseMatrix& T, const Vector& b, TriSide side, bool transpose);

// LU with partial pivoting; used for the simplex inner factor and
// the unsymmetric reduced-system experiment.
struct LuFactors {
  DenseMatrix lu;         // L below the diagonal (unit), U on and above
  std::vector<int> perm;  // row permutation
};

LuFactors lu_factor(const DenseMatrix& A);
Vector lu_solve(const LuFactors& f, const Vector& b);
Vector lu_solve_transpose(const LuFactors& f, const Vector& b);

}  // namespace sparsebench

#endif
