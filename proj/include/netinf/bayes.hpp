#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netinf/dataset.hpp"
#include "netinf/rng.hpp"
#include "netinf/scores.hpp"

namespace netinf {

/// Normal-Inverse-Wishart hyperparameters: Sigma ~ IW(k, psi),
/// mu | Sigma ~ N(lambda, Sigma / v). Same struct for prior and posterior.
struct NiwParams {
  double k = 0.0;
  Matrix psi;
  std::vector<double> lambda;
  double v = 1.0;

  std::size_t p() const { return psi.rows(); }
  void validate() const;
};

struct BayesConfig {
  std::size_t mc_draws = 1000;
  std::size_t kde_grid = 512;
  bool allow_ridge = false;  // ridge-regularize a non-SPD pilot covariance
};

/// Pilot-sample prior: k = p + 3, psi = (k - p - 1) Cov_ML(pilot) = 2 Cov_ML,
/// lambda = pilot mean, v = 1. A non-SPD pilot covariance throws unless
/// allow_ridge adds 1e-6 * mean-diagonal to the diagonal.
NiwParams elicit_prior(const Dataset& pilot, bool allow_ridge = false);

/// Closed-form Inverse-Wishart moments. mean_defined requires k - p > 1,
/// var_defined requires k - p > 3; when a flag is false the corresponding
/// matrix is not meaningful (the moment is infinite).
struct IwMoments {
  bool mean_defined = false;
  Matrix mean;
  bool var_defined = false;
  Matrix var;  // var(i,i) diagonal formula, var(i,j) off-diagonal formula
};
IwMoments iw_moments(const NiwParams& params);

/// Standard NIW conjugate update with the study data.
NiwParams posterior_update(const NiwParams& prior, const Dataset& study);

/// Inverse-Wishart draws via the Bartlett decomposition of the Wishart of the
/// inverse: W ~ Wishart(k, psi^{-1}), draw = W^{-1}.
std::vector<Matrix> sample_iw(const NiwParams& params, std::size_t count,
                              RngStream& rng);

/// Partial-correlation draws of pair (i, j) given y under IW(k, psi) for
/// Sigma: each draw's 2x2 partial covariance yields one rho. A degenerate
/// draw is redrawn at most 10 times, then throws.
std::vector<double> sample_partial_rho(const NiwParams& posterior, std::size_t i,
                                       std::size_t j,
                                       const std::vector<std::size_t>& y,
                                       std::size_t count, RngStream& rng);

/// Gaussian-kernel density on an equally spaced grid, Silverman rule-of-thumb
/// bandwidth, grid spanning [min - 3h, max + 3h].
struct DensityGrid {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<double> height;

  double x(std::size_t idx) const { return x0 + dx * static_cast<double>(idx); }
  /// Left-rectangle sum over the grid.
  double rectangle_integral() const;
  /// Height at an arbitrary point by linear interpolation; points beyond the
  /// grid clamp to the end heights (near zero by construction).
  double at(double point) const;
};
DensityGrid kde(std::span<const double> samples, std::size_t grid_size = 512);

/// FBST e-value: 1 minus the rectangle mass of the tangent set {cells with
/// height above the density at the null point}. Small e-value = evidence
/// against rho = 0, i.e. an edge.
double fbst_e_value(const DensityGrid& density, double null_point = 0.0);

/// rho and e-value for one pair from pilot-elicited prior + study posterior,
/// restricted to columns {i, j} + neighbors (empty neighbors with full = true
/// means conditioning on all remaining variables of the full posterior).
struct BayesPairScore {
  double rho = 0.0;
  double e_value = 1.0;
};
BayesPairScore bayes_pair_score(const NiwParams& posterior, std::size_t i,
                                std::size_t j, const std::vector<std::size_t>& y,
                                const BayesConfig& config, RngStream& rng);

/// NIW + FBST edge testing over every pair. Full mode conditions each pair on
/// all remaining variables under one posterior; local mode elicits a prior on
/// the pair's neighborhood sub-block. Per-pair streams are keyed by
/// (seed, i, j), so results do not depend on thread count.
struct BayesNetworkResult {
  EdgeScores scores;
  std::vector<std::vector<bool>> adjacency;
};
BayesNetworkResult bayesian_network(const Dataset& pilot, const Dataset& study,
                                    double threshold, NetworkMode mode,
                                    std::uint64_t seed,
                                    const BayesConfig& config = {},
                                    ExecPolicy exec = ExecPolicy::Parallel);

}  // namespace netinf
