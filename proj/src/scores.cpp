#include "netinf/scores.hpp"

#include <cmath>

namespace netinf {

EdgeScores EdgeScores::make(std::size_t p, ScoreKind kind) {
  EdgeScores s;
  s.p = p;
  s.rho = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i) s.rho(i, i) = 1.0;
  s.score = Matrix(p, p);
  s.cond_size.assign(p, std::vector<int>(p, 0));
  s.kind = kind;
  return s;
}

void EdgeScores::validate() const {
  if (rho.rows() != p || score.rows() != p)
    throw std::invalid_argument("EdgeScores: dimension mismatch");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      if (rho(i, j) != rho(j, i) || score(i, j) != score(j, i))
        throw std::invalid_argument("EdgeScores: asymmetric entries");
      if (!(score(i, j) >= 0.0 && score(i, j) <= 1.0))
        throw std::invalid_argument("EdgeScores: score outside [0,1]");
      if (std::fabs(rho(i, j)) > 1.0 + 1e-12)
        throw std::invalid_argument("EdgeScores: |rho| above 1");
    }
}

std::vector<std::vector<bool>> threshold_adjacency(const EdgeScores& scores,
                                                   double threshold) {
  std::vector<std::vector<bool>> adj(scores.p, std::vector<bool>(scores.p, false));
  for (std::size_t i = 0; i < scores.p; ++i)
    for (std::size_t j = i + 1; j < scores.p; ++j) {
      const bool edge = scores.score(i, j) < threshold;
      adj[i][j] = edge;
      adj[j][i] = edge;
    }
  return adj;
}

}  // namespace netinf
