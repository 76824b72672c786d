#include "netinf/partial_corr.hpp"

#include <algorithm>
#include <cmath>

namespace netinf {

double clamp_rho(double rho) {
  if (std::fabs(rho) > 1.0 + 1e-12)
    throw std::runtime_error("partial correlation " + std::to_string(rho) +
                             " exceeds [-1,1] beyond rounding tolerance");
  return std::clamp(rho, -1.0, 1.0);
}

PartialCorrEstimate partial_corr_regression(const Dataset& data, std::size_t i,
                                            std::size_t j,
                                            const std::vector<std::size_t>& y) {
  data.validate();
  const std::size_t n = data.n();
  if (i == j) throw std::invalid_argument("partial_corr_regression: i == j");
  for (std::size_t k : y)
    if (k == i || k == j)
      throw std::invalid_argument("partial_corr_regression: conditioning set contains i or j");
  if (n <= y.size() + 2)
    throw std::invalid_argument("partial_corr_regression: need n > |y| + 2");

  Matrix design(n, y.size() + 1);
  for (std::size_t r = 0; r < n; ++r) {
    design(r, 0) = 1.0;  // intercept
    for (std::size_t c = 0; c < y.size(); ++c) design(r, c + 1) = data.values(r, y[c]);
  }
  std::vector<double> xi(n), xj(n);
  for (std::size_t r = 0; r < n; ++r) {
    xi[r] = data.values(r, i);
    xj[r] = data.values(r, j);
  }
  const auto ri = lstsq_residuals(design, xi);
  const auto rj = lstsq_residuals(design, xj);

  double sii = 0.0, sjj = 0.0, sij = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    sii += ri[r] * ri[r];
    sjj += rj[r] * rj[r];
    sij += ri[r] * rj[r];
  }
  const double scale = std::max(sii, sjj);
  if (sii <= 1e-14 * std::max(1.0, scale) || sjj <= 1e-14 * std::max(1.0, scale))
    throw DegenerateDataError("partial_corr_regression: zero residual variance");

  PartialCorrEstimate out;
  out.i = i;
  out.j = j;
  out.conditioning = y;
  out.method = PcMethod::Regression;
  out.rho = clamp_rho(sij / std::sqrt(sii * sjj));
  return out;
}

Matrix partial_corr_inverse(const Matrix& corr) {
  Matrix prec;
  try {
    prec = invert_spd(corr);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "partial_corr_inverse: correlation matrix is singular (typically n < p); "
        "use the local mode instead");
  }
  const std::size_t p = corr.rows();
  Matrix rho(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      rho(i, j) = clamp_rho(-prec(i, j) / std::sqrt(prec(i, i) * prec(j, j)));
      rho(j, i) = rho(i, j);
    }
  }
  return rho;
}

PartialCorrEstimate partial_corr_schur(const Matrix& cov, std::size_t i,
                                       std::size_t j,
                                       const std::vector<std::size_t>& y) {
  if (i == j) throw std::invalid_argument("partial_corr_schur: i == j");
  std::vector<std::size_t> all = {i, j};
  all.insert(all.end(), y.begin(), y.end());
  const Matrix block = submatrix(cov, all);
  std::vector<std::size_t> keep = {0, 1};
  const Matrix part = schur_complement(block, keep);
  if (!(part(0, 0) > 0.0) || !(part(1, 1) > 0.0))
    throw DegenerateDataError("partial_corr_schur: non-positive partial variance");

  PartialCorrEstimate out;
  out.i = i;
  out.j = j;
  out.conditioning = y;
  out.method = PcMethod::PartialCovariance;
  out.rho = clamp_rho(part(0, 1) / std::sqrt(part(0, 0) * part(1, 1)));
  return out;
}

}  // namespace netinf
