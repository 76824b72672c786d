#include "netinf/local.hpp"

#include <algorithm>
#include <cmath>

#include "netinf/bayes.hpp"
#include "netinf/classical.hpp"
#include "netinf/partial_corr.hpp"
#include "netinf/rng.hpp"

namespace netinf {

NeighborhoodSpec select_neighborhood(const Matrix& corr, std::size_t i,
                                     std::size_t j, std::size_t n, double alpha,
                                     std::optional<std::size_t> cap_override) {
  const std::size_t p = corr.rows();
  if (n < 2) throw std::invalid_argument("select_neighborhood: n must be at least 2");

  auto marginally_significant = [&](double r) {
    if (n < 4) return false;  // Fisher z needs n - 3 >= 1
    if (std::fabs(r) >= 1.0) return true;
    return edge_p_value(r, n, 0) < alpha;
  };

  NeighborhoodSpec spec;
  spec.i = i;
  spec.j = j;
  spec.pair_marginally_significant = marginally_significant(corr(i, j));

  struct Candidate {
    std::size_t idx;
    double relevance;
  };
  std::vector<Candidate> candidates;
  for (std::size_t k = 0; k < p; ++k) {
    if (k == i || k == j) continue;
    if (marginally_significant(corr(i, k)) || marginally_significant(corr(j, k)))
      candidates.push_back({k, std::max(std::fabs(corr(i, k)), std::fabs(corr(j, k)))});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.relevance != b.relevance) return a.relevance > b.relevance;
    return a.idx < b.idx;  // tie: keep the lower index
  });

  const std::size_t df_guard = n >= 4 ? n - 4 : 0;
  std::size_t cap = df_guard;
  // the n/10 cap binds whenever there are more variables than observations
  // (the regime local conditioning exists for), and also when the candidate
  // set alone outnumbers the observations
  if (p > n || candidates.size() > n) {
    const std::size_t hard = cap_override.value_or(n / 10);
    cap = std::min(cap, hard);
  }
  spec.cap = cap;

  const std::size_t keep = std::min(candidates.size(), cap);
  spec.neighbors.reserve(keep);
  for (std::size_t t = 0; t < keep; ++t) spec.neighbors.push_back(candidates[t].idx);
  return spec;
}

EdgeScores local_scores(const Dataset& data, Engine engine,
                        const EngineParams& params, ExecPolicy exec) {
  data.validate();
  const std::size_t n = data.n();
  const std::size_t p = data.p();
  if (n < 6) throw std::invalid_argument("local_scores: need n >= 6");
  if (engine == Engine::Bayesian) {
    if (params.pilot == nullptr)
      throw std::invalid_argument("local_scores: Bayesian engine needs a pilot dataset");
    params.pilot->validate();
    if (params.pilot->p() != p)
      throw std::invalid_argument("local_scores: pilot and data disagree on p");
  }

  const Matrix corr = sample_correlation(data);
  const Matrix cov = sample_covariance(data, CovDenominator::NMinus1);

  EdgeScores scores = EdgeScores::make(
      p, engine == Engine::Classical ? ScoreKind::ClassicalP : ScoreKind::BayesianE);

  BayesConfig bconf;
  bconf.mc_draws = params.mc_draws;
  bconf.kde_grid = params.kde_grid;

  const auto pairs = static_cast<long long>(p * (p - 1) / 2);
  std::vector<std::string> failures(static_cast<std::size_t>(pairs));
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
  for (long long idx = 0; idx < pairs; ++idx) {
    const auto [i, j] = unrank_pair(static_cast<std::size_t>(idx), p);
    try {
      const NeighborhoodSpec nb =
          select_neighborhood(corr, i, j, n, params.alpha, params.cap_override);
      double rho, score;
      if (engine == Engine::Classical) {
        rho = partial_corr_schur(cov, i, j, nb.neighbors).rho;
        score = std::fabs(rho) >= 1.0 ? 0.0 : edge_p_value(rho, n, nb.neighbors.size());
      } else {
        std::vector<std::size_t> cols = {i, j};
        cols.insert(cols.end(), nb.neighbors.begin(), nb.neighbors.end());
        const Dataset sub_pilot = select_columns(*params.pilot, cols);
        const Dataset sub_study = select_columns(data, cols);
        const NiwParams prior = elicit_prior(sub_pilot);
        const NiwParams posterior = posterior_update(prior, sub_study);
        std::vector<std::size_t> y(nb.neighbors.size());
        for (std::size_t t = 0; t < y.size(); ++t) y[t] = t + 2;
        RngStream rng = derive_stream(params.seed, i, j);
        const BayesPairScore r = bayes_pair_score(posterior, 0, 1, y, bconf, rng);
        rho = r.rho;
        score = r.e_value;
      }
      scores.rho(i, j) = rho;
      scores.rho(j, i) = rho;
      scores.score(i, j) = score;
      scores.score(j, i) = score;
      scores.cond_size[i][j] = static_cast<int>(nb.neighbors.size());
      scores.cond_size[j][i] = scores.cond_size[i][j];
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(idx)] =
          "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + e.what();
    }
  }

  for (const auto& f : failures)
    if (!f.empty()) throw std::runtime_error("local_scores: " + f);
  return scores;
}

}  // namespace netinf
