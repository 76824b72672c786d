#pragma once

#include "netinf/dataset.hpp"
#include "netinf/scores.hpp"

namespace netinf {

/// Standard normal CDF (erfc based, abs error well below 1e-10).
double normal_cdf(double x);
/// Standard normal quantile; rational approximation refined by one Halley
/// step of the CDF, abs error below 1e-10.
double normal_quantile(double prob);

/// z(rho) = atanh(rho) = 0.5 ln((1+rho)/(1-rho)). |rho| >= 1 throws.
double fisher_z(double rho);

/// Two-sided p-value 2(1 - Phi(sqrt(n - |Y| - 3) |z(rho)|)). Rejecting when
/// p < alpha is exactly the sqrt(n-|Y|-3)|z| > Phi^{-1}(1-alpha/2) rule.
double edge_p_value(double rho, std::size_t n, std::size_t y_size);

struct NetworkResult {
  EdgeScores scores;
  std::vector<std::vector<bool>> adjacency;
};

/// Fisher-z edge test over every pair. Full mode inverts the sample
/// correlation (|Y| = p - 2 throughout); local mode picks per-pair reduced
/// conditioning sets.
NetworkResult classical_network(const Dataset& data, double alpha,
                                NetworkMode mode,
                                ExecPolicy exec = ExecPolicy::Parallel);

}  // namespace netinf
