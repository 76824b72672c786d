#pragma once

#include <cstdint>
#include <optional>

#include "netinf/dataset.hpp"
#include "netinf/scores.hpp"

namespace netinf {

/// Reduced conditioning set for one pair, ordered by descending relevance.
struct NeighborhoodSpec {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::size_t> neighbors;
  std::size_t cap = 0;
  bool pair_marginally_significant = false;
};

/// Candidates are the vertices whose marginal correlation with i or j is
/// significant at level alpha (|Y| = 0 Fisher z test); relevance is
/// max(|r_ik|, |r_jk|). When there are more variables than observations
/// (p > n), or more candidates than observations, only the floor(n/10) most
/// relevant are kept (cap_override replaces n/10). The result never exceeds
/// n - 4 neighbors so the downstream test keeps positive degrees of freedom.
/// Ties at the cutoff keep the lower vertex index.
NeighborhoodSpec select_neighborhood(const Matrix& corr, std::size_t i,
                                     std::size_t j, std::size_t n, double alpha,
                                     std::optional<std::size_t> cap_override = {});

struct EngineParams {
  double alpha = 0.05;                       // candidate-significance level; classical test level
  std::size_t mc_draws = 1000;               // Bayesian posterior draws per pair
  std::size_t kde_grid = 512;
  std::uint64_t seed = 0;
  const Dataset* pilot = nullptr;            // Bayesian engine only
  std::optional<std::size_t> cap_override;
};

/// Score every pair with a per-pair neighborhood conditioning set; rho and the
/// significance score come from the chosen engine restricted to columns
/// {i, j} + neighbors.
EdgeScores local_scores(const Dataset& data, Engine engine,
                        const EngineParams& params,
                        ExecPolicy exec = ExecPolicy::Parallel);

}  // namespace netinf
