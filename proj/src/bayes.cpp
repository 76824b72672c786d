#include "netinf/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "netinf/local.hpp"
#include "netinf/partial_corr.hpp"

namespace netinf {

void NiwParams::validate() const {
  const auto pp = static_cast<double>(p());
  if (!(k > pp - 1.0))
    throw std::invalid_argument("NiwParams: need k > p - 1 for a proper distribution");
  if (!(v > 0.0)) throw std::invalid_argument("NiwParams: v must be positive");
  if (lambda.size() != p()) throw std::invalid_argument("NiwParams: lambda size mismatch");
  if (!is_spd(psi)) throw std::invalid_argument("NiwParams: psi must be SPD");
}

NiwParams elicit_prior(const Dataset& pilot, bool allow_ridge) {
  pilot.validate();
  const std::size_t p = pilot.p();
  Matrix cov = sample_covariance(pilot, CovDenominator::N);
  if (!is_spd(cov)) {
    if (!allow_ridge)
      throw DegenerateDataError(
          "elicit_prior: pilot ML covariance is not positive definite "
          "(pilot n <= p?); enable ridge regularization or use local mode");
    double mean_diag = 0.0;
    for (std::size_t i = 0; i < p; ++i) mean_diag += cov(i, i);
    mean_diag /= static_cast<double>(p);
    const double eps = 1e-6 * mean_diag;
    for (std::size_t i = 0; i < p; ++i) cov(i, i) += eps;
  }
  NiwParams prior;
  prior.k = static_cast<double>(p) + 3.0;
  prior.psi = (prior.k - static_cast<double>(p) - 1.0) * cov;
  prior.lambda = sample_mean(pilot);
  prior.v = 1.0;
  prior.validate();
  return prior;
}

IwMoments iw_moments(const NiwParams& params) {
  const std::size_t p = params.p();
  const double d = params.k - static_cast<double>(p);
  IwMoments out;
  if (d > 1.0) {
    out.mean_defined = true;
    out.mean = (1.0 / (d - 1.0)) * params.psi;
  }
  if (d > 3.0) {
    out.var_defined = true;
    out.var = Matrix(p, p);
    const Matrix& q = params.psi;
    for (std::size_t i = 0; i < p; ++i) {
      out.var(i, i) = 2.0 * q(i, i) * q(i, i) / ((d - 1.0) * (d - 1.0) * (d - 3.0));
      for (std::size_t j = i + 1; j < p; ++j) {
        const double num =
            q(i, i) * q(j, j) + (d + 1.0) / (d - 1.0) * q(i, j) * q(i, j);
        out.var(i, j) = num / (d * (d - 1.0) * (d - 3.0));
        out.var(j, i) = out.var(i, j);
      }
    }
  }
  return out;
}

NiwParams posterior_update(const NiwParams& prior, const Dataset& study) {
  prior.validate();
  const std::size_t p = prior.p();
  const auto n = static_cast<double>(study.n());
  if (study.n() == 0) return prior;
  study.validate();
  if (study.p() != p)
    throw std::invalid_argument("posterior_update: dimension mismatch");

  const auto xbar = sample_mean(study);
  // centered scatter S = n * Cov_ML
  Matrix scatter = n * sample_covariance(study, CovDenominator::N);

  NiwParams post;
  post.k = prior.k + n;
  post.v = prior.v + n;
  post.lambda.resize(p);
  for (std::size_t i = 0; i < p; ++i)
    post.lambda[i] = (prior.v * prior.lambda[i] + n * xbar[i]) / post.v;
  post.psi = prior.psi + scatter;
  const double w = prior.v * n / post.v;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      post.psi(i, j) += w * (xbar[i] - prior.lambda[i]) * (xbar[j] - prior.lambda[j]);
  post.validate();
  return post;
}

namespace {

/// One-time setup for repeated Wishart(k, psi^{-1}) draws via Bartlett.
struct WishartOfInverseSampler {
  double k;
  std::size_t p;
  Matrix l;  // lower Cholesky factor of psi^{-1}

  explicit WishartOfInverseSampler(const NiwParams& params)
      : k(params.k), p(params.p()), l(cholesky(invert_spd(params.psi))) {}

  /// W ~ Wishart(k, psi^{-1}); Sigma = W^{-1} ~ IW(k, psi).
  Matrix draw(RngStream& rng) const {
    std::normal_distribution<double> unit(0.0, 1.0);
    Matrix a(p, p);
    for (std::size_t i = 0; i < p; ++i) {
      std::chi_squared_distribution<double> chi2(k - static_cast<double>(i));
      a(i, i) = std::sqrt(chi2(rng));
      for (std::size_t j = 0; j < i; ++j) a(i, j) = unit(rng);
    }
    // B = L A (both lower triangular), W = B B^T
    Matrix b(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t t = j; t <= i; ++t) s += l(i, t) * a(t, j);
        b(i, j) = s;
      }
    Matrix w(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t <= std::min(i, j); ++t) s += b(i, t) * b(j, t);
        w(i, j) = s;
        w(j, i) = s;
      }
    return w;
  }
};

std::vector<double> sample_partial_rho_impl(const WishartOfInverseSampler& sampler,
                                            std::size_t i, std::size_t j,
                                            const std::vector<std::size_t>& y,
                                            std::size_t count, RngStream& rng) {
  const std::size_t p = sampler.p;
  const bool full_conditioning = y.size() == p - 2;
  std::vector<std::size_t> block = {i, j};
  block.insert(block.end(), y.begin(), y.end());

  std::vector<double> out;
  out.reserve(count);
  for (std::size_t d = 0; d < count; ++d) {
    double rho = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
      const Matrix w = sampler.draw(rng);
      if (full_conditioning) {
        // partial covariance of {i,j} given the rest is the inverse of the
        // precision sub-block, so rho falls straight out of W
        const double denom = w(i, i) * w(j, j);
        if (denom > 0.0 && w(i, j) * w(i, j) < denom) {
          rho = -w(i, j) / std::sqrt(denom);
          ok = true;
        }
      } else {
        try {
          const Matrix sigma = invert_spd(w);
          const Matrix sub = submatrix(sigma, block);
          const Matrix part = schur_complement(sub, {0, 1});
          const double denom = part(0, 0) * part(1, 1);
          if (denom > 0.0) {
            rho = clamp_rho(part(0, 1) / std::sqrt(denom));
            ok = true;
          }
        } catch (const SingularMatrixError&) {
          // redraw
        }
      }
    }
    if (!ok)
      throw std::runtime_error("sample_partial_rho: degenerate draw persisted for 10 redraws");
    out.push_back(rho);
  }
  return out;
}

double posterior_mean_rho(const NiwParams& posterior, std::size_t i, std::size_t j,
                          const std::vector<std::size_t>& y) {
  const double denom = posterior.k - static_cast<double>(posterior.p()) - 1.0;
  const Matrix mean = (1.0 / denom) * posterior.psi;
  return partial_corr_schur(mean, i, j, y).rho;
}

}  // namespace

std::vector<Matrix> sample_iw(const NiwParams& params, std::size_t count,
                              RngStream& rng) {
  params.validate();
  const WishartOfInverseSampler sampler(params);
  std::vector<Matrix> draws;
  draws.reserve(count);
  for (std::size_t d = 0; d < count; ++d) draws.push_back(invert_spd(sampler.draw(rng)));
  return draws;
}

std::vector<double> sample_partial_rho(const NiwParams& posterior, std::size_t i,
                                       std::size_t j,
                                       const std::vector<std::size_t>& y,
                                       std::size_t count, RngStream& rng) {
  posterior.validate();
  const WishartOfInverseSampler sampler(posterior);
  return sample_partial_rho_impl(sampler, i, j, y, count, rng);
}

double DensityGrid::rectangle_integral() const {
  double s = 0.0;
  for (double h : height) s += h;
  return s * dx;
}

double DensityGrid::at(double point) const {
  if (height.empty()) return 0.0;
  const double t = (point - x0) / dx;
  if (t <= 0.0) return height.front();
  const auto last = static_cast<double>(height.size() - 1);
  if (t >= last) return height.back();
  const auto lo = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(lo);
  return height[lo] * (1.0 - frac) + height[lo + 1] * frac;
}

DensityGrid kde(std::span<const double> samples, std::size_t grid_size) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("kde: need at least 2 samples");
  if (grid_size < 2) throw std::invalid_argument("kde: grid_size must be at least 2");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    throw DegenerateDataError("kde: all samples identical");

  double mean = 0.0;
  for (double s : sorted) mean += s;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double s : sorted) var += (s - mean) * (s - mean);
  var /= static_cast<double>(n - 1);
  const double sd = std::sqrt(var);

  auto quantile = [&](double q) {
    const double hpos = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(hpos);
    const double frac = hpos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
  };
  const double iqr = quantile(0.75) - quantile(0.25);

  // Silverman rule of thumb
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  const double bw = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  if (!(bw > 0.0)) throw DegenerateDataError("kde: zero bandwidth");

  DensityGrid g;
  g.x0 = sorted.front() - 3.0 * bw;
  const double x_end = sorted.back() + 3.0 * bw;
  g.dx = (x_end - g.x0) / static_cast<double>(grid_size - 1);
  g.height.assign(grid_size, 0.0);

  const double norm = 1.0 / (static_cast<double>(n) * bw * std::sqrt(2.0 * M_PI));
  const double support = 8.0 * bw;  // kernel mass beyond 8 bandwidths is ~1e-15
  for (std::size_t gidx = 0; gidx < grid_size; ++gidx) {
    const double x = g.x(gidx);
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x - support);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), x + support);
    double s = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const double u = (x - *it) / bw;
      s += std::exp(-0.5 * u * u);
    }
    g.height[gidx] = s * norm;
  }
  return g;
}

double fbst_e_value(const DensityGrid& density, double null_point) {
  if (density.height.empty()) throw std::invalid_argument("fbst_e_value: empty density");
  const double f0 = density.at(null_point);
  double tangent_mass = 0.0;
  for (double h : density.height)
    if (h > f0) tangent_mass += h;
  tangent_mass *= density.dx;
  return std::clamp(1.0 - tangent_mass, 0.0, 1.0);
}

BayesPairScore bayes_pair_score(const NiwParams& posterior, std::size_t i,
                                std::size_t j, const std::vector<std::size_t>& y,
                                const BayesConfig& config, RngStream& rng) {
  const auto draws = sample_partial_rho(posterior, i, j, y, config.mc_draws, rng);
  BayesPairScore out;
  out.rho = posterior_mean_rho(posterior, i, j, y);
  try {
    out.e_value = fbst_e_value(kde(draws, config.kde_grid));
  } catch (const DegenerateDataError&) {
    // all draws at one point: full evidence for that value
    out.e_value = draws.front() == 0.0 ? 1.0 : 0.0;
  }
  return out;
}

BayesNetworkResult bayesian_network(const Dataset& pilot, const Dataset& study,
                                    double threshold, NetworkMode mode,
                                    std::uint64_t seed, const BayesConfig& config,
                                    ExecPolicy exec) {
  pilot.validate();
  study.validate();
  if (pilot.p() != study.p())
    throw std::invalid_argument("bayesian_network: pilot and study disagree on p");
  const std::size_t p = study.p();

  EdgeScores scores;
  if (mode == NetworkMode::Local) {
    EngineParams params;
    params.mc_draws = config.mc_draws;
    params.kde_grid = config.kde_grid;
    params.seed = seed;
    params.pilot = &pilot;
    scores = local_scores(study, Engine::Bayesian, params, exec);
  } else {
    const NiwParams prior = elicit_prior(pilot, config.allow_ridge);
    const NiwParams posterior = posterior_update(prior, study);
    const WishartOfInverseSampler sampler(posterior);

    const double denom = posterior.k - static_cast<double>(p) - 1.0;
    const Matrix mean = (1.0 / denom) * posterior.psi;
    const Matrix point_rho = partial_corr_inverse(correlation_from_covariance(mean));

    scores = EdgeScores::make(p, ScoreKind::BayesianE);
    const auto pairs = static_cast<long long>(p * (p - 1) / 2);
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
    for (long long idx = 0; idx < pairs; ++idx) {
      const auto [i, j] = unrank_pair(static_cast<std::size_t>(idx), p);
      std::vector<std::size_t> y;
      y.reserve(p - 2);
      for (std::size_t k = 0; k < p; ++k)
        if (k != i && k != j) y.push_back(k);
      RngStream rng = derive_stream(seed, i, j);
      const auto draws = sample_partial_rho_impl(sampler, i, j, y, config.mc_draws, rng);
      double e;
      try {
        e = fbst_e_value(kde(draws, config.kde_grid));
      } catch (const DegenerateDataError&) {
        e = draws.front() == 0.0 ? 1.0 : 0.0;
      }
      scores.rho(i, j) = point_rho(i, j);
      scores.rho(j, i) = point_rho(i, j);
      scores.score(i, j) = e;
      scores.score(j, i) = e;
      scores.cond_size[i][j] = static_cast<int>(p) - 2;
      scores.cond_size[j][i] = scores.cond_size[i][j];
    }
  }

  BayesNetworkResult out;
  out.adjacency = threshold_adjacency(scores, threshold);
  out.scores = std::move(scores);
  return out;
}

}  // namespace netinf
