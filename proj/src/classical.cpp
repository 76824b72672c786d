#include "netinf/classical.hpp"

#include <cmath>

#include "netinf/local.hpp"
#include "netinf/partial_corr.hpp"

namespace netinf {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

namespace {

// Acklam's rational approximation to the standard normal quantile.
double quantile_acklam(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("normal_quantile: probability must lie in (0,1)");
  double x = quantile_acklam(prob);
  // one Halley refinement
  const double e = normal_cdf(x) - prob;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double fisher_z(double rho) {
  if (!(std::fabs(rho) < 1.0))
    throw std::invalid_argument("fisher_z: |rho| must be strictly below 1");
  return std::atanh(rho);
}

double edge_p_value(double rho, std::size_t n, std::size_t y_size) {
  if (n < y_size + 4)
    throw std::invalid_argument("edge_p_value: need n - |Y| - 3 >= 1");
  const double stat =
      std::sqrt(static_cast<double>(n - y_size - 3)) * std::fabs(fisher_z(rho));
  return 2.0 * (1.0 - normal_cdf(stat));
}

NetworkResult classical_network(const Dataset& data, double alpha,
                                NetworkMode mode, ExecPolicy exec) {
  data.validate();
  const std::size_t p = data.p();

  EdgeScores scores;
  if (mode == NetworkMode::Local) {
    EngineParams params;
    params.alpha = alpha;
    scores = local_scores(data, Engine::Classical, params, exec);
  } else {
    if (data.n() <= p)
      throw SingularMatrixError(
          "classical_network: full mode needs n > p (sample correlation is "
          "singular otherwise); use local mode");
    const Matrix corr = sample_correlation(data);
    const Matrix prho = partial_corr_inverse(corr);
    scores = EdgeScores::make(p, ScoreKind::ClassicalP);
    const auto pairs = static_cast<long long>(p * (p - 1) / 2);
#pragma omp parallel for schedule(static) if (exec == ExecPolicy::Parallel)
    for (long long idx = 0; idx < pairs; ++idx) {
      const auto [i, j] = unrank_pair(static_cast<std::size_t>(idx), p);
      const double r = prho(i, j);
      const double pv = edge_p_value(r, data.n(), p - 2);
      scores.rho(i, j) = r;
      scores.rho(j, i) = r;
      scores.score(i, j) = pv;
      scores.score(j, i) = pv;
      scores.cond_size[i][j] = static_cast<int>(p) - 2;
      scores.cond_size[j][i] = scores.cond_size[i][j];
    }
  }

  NetworkResult out;
  out.adjacency = threshold_adjacency(scores, alpha);
  out.scores = std::move(scores);
  return out;
}

}  // namespace netinf
