#include "netinf/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace netinf {

void Dataset::validate() const {
  if (n() < 2) throw std::invalid_argument("Dataset: need at least 2 observations");
  if (p() < 2) throw std::invalid_argument("Dataset: need at least 2 variables");
  if (names.size() != p())
    throw std::invalid_argument("Dataset: name count does not match column count");
  for (double x : values.data())
    if (!std::isfinite(x)) throw std::invalid_argument("Dataset: non-finite entry");
}

Dataset Dataset::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Dataset d;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) d.names.push_back(cell);
  }
  std::vector<double> rows;
  std::size_t nrows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (cell.empty())
        throw std::runtime_error(path.string() + ": missing value at row " +
                                 std::to_string(nrows + 2));
      rows.push_back(std::stod(cell));
      ++c;
    }
    if (c != d.names.size())
      throw std::runtime_error(path.string() + ": row " + std::to_string(nrows + 2) +
                               " has " + std::to_string(c) + " cells, expected " +
                               std::to_string(d.names.size()));
    ++nrows;
  }
  d.values = Matrix(nrows, d.names.size());
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < d.names.size(); ++j)
      d.values(i, j) = rows[i * d.names.size() + j];
  d.validate();
  return d;
}

void Dataset::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t j = 0; j < p(); ++j) out << (j ? "," : "") << names[j];
  out << "\n";
  char buf[32];
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = 0; j < p(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

Dataset select_columns(const Dataset& data, const std::vector<std::size_t>& cols) {
  Dataset out;
  out.values = Matrix(data.n(), cols.size());
  out.names.reserve(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.names.push_back(data.names[cols[c]]);
    for (std::size_t i = 0; i < data.n(); ++i)
      out.values(i, c) = data.values(i, cols[c]);
  }
  return out;
}

std::vector<double> sample_mean(const Dataset& data) {
  data.validate();
  std::vector<double> mu(data.p(), 0.0);
  for (std::size_t i = 0; i < data.n(); ++i)
    for (std::size_t j = 0; j < data.p(); ++j) mu[j] += data.values(i, j);
  for (double& m : mu) m /= static_cast<double>(data.n());
  return mu;
}

Matrix sample_covariance(const Dataset& data, CovDenominator denom) {
  data.validate();
  const std::size_t n = data.n(), p = data.p();
  const auto mu = sample_mean(data);
  Matrix cov(p, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      const double da = data.values(i, a) - mu[a];
      for (std::size_t b = a; b < p; ++b)
        cov(a, b) += da * (data.values(i, b) - mu[b]);
    }
  const double d = denom == CovDenominator::N ? static_cast<double>(n)
                                              : static_cast<double>(n - 1);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a; b < p; ++b) {
      cov(a, b) /= d;
      cov(b, a) = cov(a, b);
    }
  return cov;
}

Matrix sample_correlation(const Dataset& data) {
  const Matrix cov = sample_covariance(data, CovDenominator::NMinus1);
  for (std::size_t j = 0; j < data.p(); ++j)
    if (!(cov(j, j) > 0.0))
      throw DegenerateDataError("sample_correlation: column '" + data.names[j] +
                                "' has zero variance");
  return correlation_from_covariance(cov);
}

Matrix correlation_from_covariance(const Matrix& cov) {
  const std::size_t p = cov.rows();
  std::vector<double> s(p);
  for (std::size_t j = 0; j < p; ++j) {
    if (!(cov(j, j) > 0.0))
      throw DegenerateDataError("correlation_from_covariance: non-positive variance at index " +
                                std::to_string(j));
    s[j] = std::sqrt(cov(j, j));
  }
  Matrix r(p, p);
  for (std::size_t a = 0; a < p; ++a) {
    r(a, a) = 1.0;
    for (std::size_t b = a + 1; b < p; ++b) {
      r(a, b) = cov(a, b) / (s[a] * s[b]);
      r(b, a) = r(a, b);
    }
  }
  return r;
}

}  // namespace netinf
