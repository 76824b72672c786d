#pragma once

#include <utility>
#include <vector>

#include "netinf/linalg.hpp"

namespace netinf {

enum class ScoreKind { ClassicalP, BayesianE };
enum class NetworkMode { Full, Local };
enum class Engine { Classical, Bayesian };

/// Serial and OpenMP execution of the pairwise scoring loops produce
/// bit-identical results; Serial is kept as the reference path.
enum class ExecPolicy { Serial, Parallel };

/// Per-pair partial correlations and significance scores. Lower score means
/// stronger evidence for an edge, for p-values and e-values alike.
struct EdgeScores {
  std::size_t p = 0;
  Matrix rho;                              // p x p, unit diagonal
  Matrix score;                            // p x p in [0,1], diagonal unused
  std::vector<std::vector<int>> cond_size; // |Y| used per pair
  ScoreKind kind = ScoreKind::ClassicalP;

  static EdgeScores make(std::size_t p, ScoreKind kind);
  void validate() const;
};

/// adjacency[i][j] = score(i,j) < threshold.
std::vector<std::vector<bool>> threshold_adjacency(const EdgeScores& scores,
                                                   double threshold);

/// Map a linear index in [0, p(p-1)/2) to the pair (i, j) with i < j,
/// enumerated row by row. Lets pair loops be flat for OpenMP.
inline std::pair<std::size_t, std::size_t> unrank_pair(std::size_t idx,
                                                       std::size_t p) {
  std::size_t i = 0;
  std::size_t row = p - 1;
  while (idx >= row) {
    idx -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + idx};
}

}  // namespace netinf
