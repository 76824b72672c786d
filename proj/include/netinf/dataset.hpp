#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netinf/linalg.hpp"

namespace netinf {

/// n observations of p jointly measured variables, column labels attached.
struct Dataset {
  std::vector<std::string> names;  // length p
  Matrix values;                   // n x p

  std::size_t n() const { return values.rows(); }
  std::size_t p() const { return values.cols(); }

  /// Rejects n < 2, p < 2, name/column mismatch and non-finite entries.
  void validate() const;

  /// CSV: header row of variable names, one observation per row, '.' decimal
  /// separator, no missing values.
  static Dataset read_csv(const std::filesystem::path& path);
  void write_csv(const std::filesystem::path& path) const;
};

/// New Dataset holding the given columns, in the given order.
Dataset select_columns(const Dataset& data, const std::vector<std::size_t>& cols);

enum class CovDenominator { N, NMinus1 };

std::vector<double> sample_mean(const Dataset& data);

Matrix sample_covariance(const Dataset& data, CovDenominator denom);

/// Pearson correlation matrix. A zero-variance column raises
/// DegenerateDataError naming the column.
Matrix sample_correlation(const Dataset& data);

/// D^{-1/2} Cov D^{-1/2} with D = diag(Cov).
Matrix correlation_from_covariance(const Matrix& cov);

}  // namespace netinf
