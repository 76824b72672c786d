#include "netinf/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace netinf {

namespace {
constexpr double kPivotRelTol = 1e-12;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (double& x : out.data()) x *= s;
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      d = std::max(d, std::fabs(a(i, j) - b(i, j)));
  return d;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

Matrix cholesky(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n)
    throw std::invalid_argument("cholesky: matrix must be square and non-empty");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(m(i, i)));
  const double pivot_floor = kPivotRelTol * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > pivot_floor))
      throw SingularMatrixError("cholesky: pivot " + std::to_string(d) +
                                " at index " + std::to_string(j) +
                                " below threshold; matrix not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

bool is_spd(const Matrix& m) {
  if (!is_symmetric(m, 1e-9)) return false;
  try {
    cholesky(m);
    return true;
  } catch (const SingularMatrixError&) {
    return false;
  }
}

std::vector<double> solve_lower(const Matrix& l, std::span<const double> b) {
  const std::size_t n = l.rows();
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

std::vector<double> solve_lower_transposed(const Matrix& l, std::span<const double> b) {
  const std::size_t n = l.rows();
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= l(k, ii) * x[k];
    x[ii] /= l(ii, ii);
  }
  return x;
}

Matrix invert_spd(const Matrix& m) {
  const Matrix l = cholesky(m);
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const auto y = solve_lower(l, e);
    const auto x = solve_lower_transposed(l, y);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  // symmetrize away round-off
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return inv;
}

double log_det_spd(const Matrix& m) {
  const Matrix l = cholesky(m);
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
  return out;
}

Matrix schur_complement(const Matrix& m, const std::vector<std::size_t>& keep) {
  const std::size_t n = m.rows();
  std::vector<bool> in_keep(n, false);
  for (std::size_t i : keep) in_keep[i] = true;
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_keep[i]) comp.push_back(i);

  Matrix out = submatrix(m, keep);
  if (comp.empty()) return out;

  Matrix l;
  try {
    l = cholesky(submatrix(m, comp));
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("schur_complement: conditioning block is singular");
  }

  // out -= M_AB M_BB^{-1} M_BA, one solve per column of M_BA
  const std::size_t q = comp.size();
  std::vector<double> col(q);
  std::vector<std::vector<double>> solved(keep.size());
  for (std::size_t b = 0; b < keep.size(); ++b) {
    for (std::size_t r = 0; r < q; ++r) col[r] = m(comp[r], keep[b]);
    solved[b] = solve_lower(l, col);
  }
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a; b < keep.size(); ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < q; ++r) s += solved[a][r] * solved[b][r];
      out(a, b) -= s;
      if (b != a) out(b, a) = out(a, b);
    }
  return out;
}

std::vector<double> lstsq_residuals(const Matrix& design, std::span<const double> y) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  if (n < k) throw std::invalid_argument("lstsq_residuals: more columns than rows");

  Matrix a = design;
  std::vector<double> r(y.begin(), y.end());

  // Householder QR applied to [A | y]; residual = components of Q^T y beyond
  // the first k, rotated back.
  std::vector<std::vector<double>> vs(k);
  double max_col_norm = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double norm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) norm2 += a(i, j) * a(i, j);
    const double norm = std::sqrt(norm2);
    max_col_norm = std::max(max_col_norm, norm);
    if (norm <= 1e-12 * std::max(1.0, max_col_norm))
      throw SingularMatrixError("lstsq_residuals: rank-deficient design at column " +
                                std::to_string(j));
    std::vector<double> v(n - j);
    for (std::size_t i = j; i < n; ++i) v[i - j] = a(i, j);
    v[0] += (v[0] >= 0.0 ? norm : -norm);
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    const double beta = 2.0 / vnorm2;
    // apply to remaining columns of A
    for (std::size_t c = j; c < k; ++c) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i - j] * a(i, c);
      dot *= beta;
      for (std::size_t i = j; i < n; ++i) a(i, c) -= dot * v[i - j];
    }
    // apply to y
    double dot = 0.0;
    for (std::size_t i = j; i < n; ++i) dot += v[i - j] * r[i];
    dot *= beta;
    for (std::size_t i = j; i < n; ++i) r[i] -= dot * v[i - j];
    vs[j] = std::move(v);
  }

  // zero the fitted part, rotate back: residual = Q [0; r_{k..n}]
  for (std::size_t i = 0; i < k; ++i) r[i] = 0.0;
  for (std::size_t jj = k; jj-- > 0;) {
    const auto& v = vs[jj];
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    const double beta = 2.0 / vnorm2;
    double dot = 0.0;
    for (std::size_t i = jj; i < n; ++i) dot += v[i - jj] * r[i];
    dot *= beta;
    for (std::size_t i = jj; i < n; ++i) r[i] -= dot * v[i - jj];
  }
  return r;
}

}  // namespace netinf
