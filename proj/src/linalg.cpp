#include "sparsebench/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sparsebench {

DenseMatrix::DenseMatrix(int rows, int cols, Vector entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<size_t>(rows) * cols)
    throw DimensionMismatch("DenseMatrix: entry count does not match shape");
  check_finite();
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

void DenseMatrix::check_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix T(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Vector matvec(const DenseMatrix& A, const Vector& x) {
  if (static_cast<int>(x.size()) != A.cols())
    throw DimensionMismatch("matvec: size mismatch");
  Vector y(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    const double* row = A.row_ptr(i);
    double s = 0.0;
    for (int j = 0; j < A.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_transpose(const DenseMatrix& A, const Vector& x) {
  if (static_cast<int>(x.size()) != A.rows())
    throw DimensionMismatch("matvec_transpose: size mismatch");
  Vector y(A.cols(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    const double* row = A.row_ptr(i);
    const double xi = x[i];
    for (int j = 0; j < A.cols(); ++j) y[j] += row[j] * xi;
  }
  return y;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols() != B.rows()) throw DimensionMismatch("matmul: size mismatch");
  DenseMatrix C(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    const double* arow = A.row_ptr(i);
    double* crow = C.row_ptr(i);
    for (int k = 0; k < A.cols(); ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = B.row_ptr(k);
      for (int j = 0; j < B.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return C;
}

DenseMatrix matmul_at_b(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows()) throw DimensionMismatch("matmul_at_b: size mismatch");
  DenseMatrix C(A.cols(), B.cols());
  for (int k = 0; k < A.rows(); ++k) {
    const double* arow = A.row_ptr(k);
    const double* brow = B.row_ptr(k);
    for (int i = 0; i < A.cols(); ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* crow = C.row_ptr(i);
      for (int j = 0; j < B.cols(); ++j) crow[j] += aki * brow[j];
    }
  }
  return C;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double norm1(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

void axpy(double alpha, const Vector& b, Vector& a) {
  if (a.size() != b.size()) throw DimensionMismatch("axpy: size mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += alpha * b[i];
}

QrFactors qr_factor(const DenseMatrix& A) {
  const int m = A.rows(), n = A.cols();
  if (m < n) throw DimensionMismatch("qr_factor: requires m >= n");
  A.check_finite();

  double max_col_norm = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += A(i, j) * A(i, j);
    max_col_norm = std::max(max_col_norm, std::sqrt(s));
  }

  QrFactors f;
  f.qr_ = A;
  f.tau_.assign(n, 0.0);
  DenseMatrix& R = f.qr_;

  for (int k = 0; k < n; ++k) {
    // Householder vector for column k below the diagonal.
    double xnorm = 0.0;
    for (int i = k; i < m; ++i) xnorm += R(i, k) * R(i, k);
    xnorm = std::sqrt(xnorm);
    if (xnorm <= 1e-12 * max_col_norm) throw RankDeficientError(k);

    const double alpha = (R(k, k) >= 0.0) ? -xnorm : xnorm;
    const double v0 = R(k, k) - alpha;
    // v = (v0, R(k+1..m-1, k)); tau = -v0 / alpha gives H = I - tau v v' / v0^2
    // Store v / v0 below the diagonal so the implicit head entry is 1.
    for (int i = k + 1; i < m; ++i) R(i, k) /= v0;
    f.tau_[k] = -v0 / alpha;
    R(k, k) = alpha;

    // Apply the reflector to the trailing columns.
    for (int j = k + 1; j < n; ++j) {
      double s = R(k, j);
      for (int i = k + 1; i < m; ++i) s += R(i, k) * R(i, j);
      s *= f.tau_[k];
      R(k, j) -= s;
      for (int i = k + 1; i < m; ++i) R(i, j) -= s * R(i, k);
    }
  }
  return f;
}

DenseMatrix QrFactors::r() const {
  const int n = qr_.cols();
  DenseMatrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) R(i, j) = qr_(i, j);
  return R;
}

Vector QrFactors::apply_qt(const Vector& x) const {
  if (static_cast<int>(x.size()) != m()) throw DimensionMismatch("apply_qt: size mismatch");
  Vector y = x;
  for (int k = 0; k < n(); ++k) {
    double s = y[k];
    for (int i = k + 1; i < m(); ++i) s += qr_(i, k) * y[i];
    s *= tau_[k];
    y[k] -= s;
    for (int i = k + 1; i < m(); ++i) y[i] -= s * qr_(i, k);
  }
  return y;
}

Vector QrFactors::apply_q(const Vector& x) const {
  if (static_cast<int>(x.size()) != m()) throw DimensionMismatch("apply_q: size mismatch");
  Vector y = x;
  for (int k = n() - 1; k >= 0; --k) {
    double s = y[k];
    for (int i = k + 1; i < m(); ++i) s += qr_(i, k) * y[i];
    s *= tau_[k];
    y[k] -= s;
    for (int i = k + 1; i < m(); ++i) y[i] -= s * qr_(i, k);
  }
  return y;
}

DenseMatrix QrFactors::thin_q() const {
  DenseMatrix Q(m(), n());
  Vector e(m(), 0.0);
  for (int j = 0; j < n(); ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    Vector q = apply_q(e);
    for (int i = 0; i < m(); ++i) Q(i, j) = q[i];
  }
  return Q;
}

Vector QrFactors::solve_least_squares(const Vector& b) const {
  Vector qtb = apply_qt(b);
  qtb.resize(n());
  return solve_tri(r(), qtb, TriSide::Upper, false);
}

CholFactor chol_factor(const DenseMatrix& H) {
  const int n = H.rows();
  if (H.cols() != n) throw DimensionMismatch("chol_factor: matrix not square");
  DenseMatrix L(n, n);
  for (int j = 0; j < n; ++j) {
    double d = H(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d <= 0.0 || !std::isfinite(d)) throw NotPositiveDefiniteError(j);
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = H(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return CholFactor{std::move(L)};
}

Vector solve_chol(const CholFactor& factor, const Vector& b) {
  Vector y = solve_tri(factor.l, b, TriSide::Lower, false);
  return solve_tri(factor.l, y, TriSide::Lower, true);
}

Vector solve_tri(const DenseMatrix& T, const Vector& b, TriSide side, bool transpose) {
  const int n = T.rows();
  if (T.cols() != n || static_cast<int>(b.size()) != n)
    throw DimensionMismatch("solve_tri: size mismatch");
  const double dmin = 1e-14 * T.max_abs();
  for (int i = 0; i < n; ++i)
    if (std::abs(T(i, i)) <= dmin) throw SingularMatrixError(i);

  // A transposed lower solve is an upper solve with swapped indexing.
  const bool lower = (side == TriSide::Lower) != transpose;
  Vector x = b;
  if (lower) {
    for (int i = 0; i < n; ++i) {
      double s = x[i];
      if (!transpose) {
        for (int j = 0; j < i; ++j) s -= T(i, j) * x[j];
      } else {
        for (int j = 0; j < i; ++j) s -= T(j, i) * x[j];
      }
      x[i] = s / T(i, i);
    }
  } else {
    for (int i = n - 1; i >= 0; --i) {
      double s = x[i];
      if (!transpose) {
        for (int j = i + 1; j < n; ++j) s -= T(i, j) * x[j];
      } else {
        for (int j = i + 1; j < n; ++j) s -= T(j, i) * x[j];
      }
      x[i] = s / T(i, i);
    }
  }
  return x;
}

LuFactors lu_factor(const DenseMatrix& A) {
  const int n = A.rows();
  if (A.cols() != n) throw DimensionMismatch("lu_factor: matrix not square");
  LuFactors f;
  f.lu = A;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  DenseMatrix& M = f.lu;
  const double tiny = 1e-14 * std::max(1.0, A.max_abs());

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double pmax = std::abs(M(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(M(i, k)) > pmax) {
        pmax = std::abs(M(i, k));
        piv = i;
      }
    }
    if (pmax <= tiny) throw SingularMatrixError(k);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      M(i, k) /= M(k, k);
      const double lik = M(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) M(i, j) -= lik * M(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
  const int n = f.lu.rows();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatch("lu_solve: size mismatch");
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

Vector lu_solve_transpose(const LuFactors& f, const Vector& b) {
  const int n = f.lu.rows();
  if (static_cast<int>(b.size()) != n)
    throw DimensionMismatch("lu_solve_transpose: size mismatch");
  // Solve U' y = b, then L' z = y, then undo the permutation.
  Vector y = b;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) y[i] -= f.lu(j, i) * y[j];
    y[i] /= f.lu(i, i);
  }
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) y[i] -= f.lu(j, i) * y[j];
  Vector x(n);
  for (int i = 0; i < n; ++i) x[f.perm[i]] = y[i];
  return x;
}

}  // namespace sparsebench
