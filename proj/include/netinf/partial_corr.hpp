#pragma once

#include <vector>

#include "netinf/dataset.hpp"
#include "netinf/linalg.hpp"

namespace netinf {

enum class PcMethod { Regression, Inverse, PartialCovariance };

struct PartialCorrEstimate {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::size_t> conditioning;
  double rho = 0.0;
  PcMethod method = PcMethod::Regression;
};

/// Clamp floating overshoot of |rho| <= 1 up to 1e-12; larger violations throw.
double clamp_rho(double rho);

/// Correlation of the least-squares residuals of columns i and j regressed on
/// [intercept, columns y]. y empty gives the plain sample correlation.
PartialCorrEstimate partial_corr_regression(const Dataset& data, std::size_t i,
                                            std::size_t j,
                                            const std::vector<std::size_t>& y);

/// Full-order partial correlations from a correlation matrix: with P = corr^{-1},
/// entry (i,j) is -p_ij / sqrt(p_ii p_jj); the conditioning set is always all
/// remaining variables. Singular corr (the n < p case) throws.
Matrix partial_corr_inverse(const Matrix& corr);

/// rho from the 2x2 Schur complement of {i,j} against y inside cov.
PartialCorrEstimate partial_corr_schur(const Matrix& cov, std::size_t i,
                                       std::size_t j,
                                       const std::vector<std::size_t>& y);

}  // namespace netinf
