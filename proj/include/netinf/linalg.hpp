#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netinf {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles. Small-p workloads only; everything is
/// stored and operated on densely.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> data() const { return v_; }
  std::span<double> data() { return v_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& m, double tol = 1e-12);

/// Lower Cholesky factor of a symmetric positive definite matrix.
/// A pivot below 1e-12 times the largest diagonal entry is treated as
/// singular and raises SingularMatrixError.
Matrix cholesky(const Matrix& m);

/// True iff cholesky(m) succeeds.
bool is_spd(const Matrix& m);

/// Inverse of an SPD matrix via its Cholesky factor.
Matrix invert_spd(const Matrix& m);

/// log-determinant of an SPD matrix.
double log_det_spd(const Matrix& m);

/// Solve L x = b for lower-triangular L.
std::vector<double> solve_lower(const Matrix& l, std::span<const double> b);
/// Solve L^T x = b for lower-triangular L.
std::vector<double> solve_lower_transposed(const Matrix& l, std::span<const double> b);

/// Schur complement of the block indexed by `keep` against its complement:
/// M_AA - M_AB M_BB^{-1} M_BA with A = keep. `keep` equal to all indices
/// returns m itself. A singular complement block raises SingularMatrixError.
Matrix schur_complement(const Matrix& m, const std::vector<std::size_t>& keep);

/// Extract the square submatrix indexed by `idx` (rows and columns).
Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& idx);

/// Least-squares residuals of y against the columns of `design` via
/// Householder QR. Raises SingularMatrixError on a rank-deficient design.
std::vector<double> lstsq_residuals(const Matrix& design, std::span<const double> y);

}  // namespace netinf
