// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "json.hpp"
#include "netinf/bayes.hpp"
#include "netinf/classical.hpp"
#include "netinf/experiment.hpp"
#include "netinf/local.hpp"
#include "netinf/partial_corr.hpp"
#include "netinf/tree_sim.hpp"

using namespace netinf;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- criterion 1
void criterion_method_equivalence() {
  const auto t0 = clock_type::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> pdist(3, 10);
  std::normal_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = pdist(rng);
    const std::size_t n = 5 * p + pdist(rng);
    Dataset d;
    d.values = Matrix(n, p);
    d.names.resize(p);
    for (std::size_t j = 0; j < p; ++j) d.names[j] = "v" + std::to_string(j);
    std::vector<double> shared(n);
    for (std::size_t i = 0; i < n; ++i) shared[i] = unit(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j)
        d.values(i, j) = unit(rng) + 0.4 * shared[i];
    const Matrix inv = partial_corr_inverse(sample_correlation(d));
    const Matrix cov = sample_covariance(d, CovDenominator::NMinus1);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) {
        std::vector<std::size_t> y;
        for (std::size_t k = 0; k < p; ++k)
          if (k != i && k != j) y.push_back(k);
        const double schur = partial_corr_schur(cov, i, j, y).rho;
        const double reg = partial_corr_regression(d, i, j, y).rho;
        worst = std::max({worst, std::fabs(inv(i, j) - schur),
                          std::fabs(inv(i, j) - reg)});
      }
  }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "method equivalence, 100 datasets, max discrepancy %.2e "
                "(limit 1e-8), %.1f s (limit 10 s)",
                worst, secs);
  report(1, worst < 1e-8 && secs < 10.0, buf);
}

// ---------------------------------------------------------------- criterion 2
void criterion_classical_calibration() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> unit(0.0, 1.0);
  const std::size_t tests = 10000, n = 200;
  std::size_t rejected = 0;
  std::vector<double> x(n), y(n);
  for (std::size_t t = 0; t < tests; ++t) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = unit(rng);
      y[i] = unit(rng);
      sx += x[i]; sy += y[i];
      sxx += x[i] * x[i]; syy += y[i] * y[i]; sxy += x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    const double r = (sxy - sx * sy / nn) /
                     std::sqrt((sxx - sx * sx / nn) * (syy - sy * sy / nn));
    rejected += edge_p_value(r, n, 0) < 0.05;
  }
  const double rate = static_cast<double>(rejected) / tests;
  const double band = 3.0 * std::sqrt(0.05 * 0.95 / tests);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "null rejection rate %.4f within %.4f of 0.05 over %zu tests",
                rate, band, tests);
  report(2, std::fabs(rate - 0.05) < band, buf);
}

// ---------------------------------------------------------------- criterion 3
void criterion_iw_sampler_moments() {
  const auto t0 = clock_type::now();
  NiwParams prm;
  prm.k = 11.0;  // p + 8
  prm.psi = Matrix(3, 3);
  prm.psi(0, 0) = 3.0; prm.psi(1, 1) = 2.0; prm.psi(2, 2) = 1.5;
  prm.psi(0, 1) = prm.psi(1, 0) = 0.7;
  prm.psi(0, 2) = prm.psi(2, 0) = -0.4;
  prm.psi(1, 2) = prm.psi(2, 1) = 0.3;
  prm.lambda = {0.0, 0.0, 0.0};
  const IwMoments closed = iw_moments(prm);

  const std::size_t draws = 100000;
  RngStream rng(derive_stream(303));
  // streamed accumulation of first, second and fourth central pieces
  Matrix sum(3, 3), sum2(3, 3);
  std::vector<Matrix> samples = sample_iw(prm, draws, rng);
  for (const Matrix& s : samples) {
    sum = sum + s;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) sum2(a, b) += s(a, b) * s(a, b);
  }
  const double nd = static_cast<double>(draws);
  bool ok = true;
  double worst_sigma = 0.0;
  Matrix mean(3, 3), var(3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      mean(a, b) = sum(a, b) / nd;
      var(a, b) = sum2(a, b) / nd - mean(a, b) * mean(a, b);
    }
  // MC standard error of each elementwise mean
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const double se = std::sqrt(var(a, b) / nd);
      const double dev = std::fabs(mean(a, b) - closed.mean(a, b)) / se;
      worst_sigma = std::max(worst_sigma, dev);
      ok = ok && dev < 3.0;
    }
  // MC standard error of each elementwise variance via the empirical fourth
  // central moment
  Matrix sum4(3, 3);
  for (const Matrix& s : samples)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        const double c = s(a, b) - mean(a, b);
        sum4(a, b) += c * c * c * c;
      }
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const double m4 = sum4(a, b) / nd;
      const double se = std::sqrt((m4 - var(a, b) * var(a, b)) / nd);
      const double dev = std::fabs(var(a, b) - closed.var(a, b)) / se;
      worst_sigma = std::max(worst_sigma, dev);
      ok = ok && dev < 3.0;
    }
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "IW sampler moments, worst deviation %.2f sigma (limit 3), "
                "%.1f s (limit 60 s)",
                worst_sigma, secs);
  report(3, ok && secs < 60.0, buf);
}

// ---------------------------------------------------------------- criterion 4
void criterion_fbst_analytic() {
  RngStream rng(derive_stream(404));
  std::normal_distribution<double> shifted(1.0, 1.0);
  double sum = 0.0;
  const int reps = 50;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> samples(1000);
    for (double& s : samples) s = shifted(rng);
    sum += fbst_e_value(kde(samples), 0.0);
  }
  const double mean_e = sum / reps;
  const double target = 2.0 * normal_cdf(-1.0);  // 0.3173
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "FBST e-value %.4f within 0.05 of 2*Phi(-1) = %.4f", mean_e,
                target);
  report(4, std::fabs(mean_e - target) < 0.05, buf);
}

// --------------------------------------------------------- criteria 5, 6, 7
void criteria_desk_scale_figures() {
  const fs::path dir = fs::temp_directory_path() / "netinf_acceptance_desk";
  fs::remove_all(dir);
  ExperimentConfig cfg;
  cfg.apply_desk_scale();
  cfg.master_seed = 20250823;
  cfg.output_dir = dir;

  const auto t0 = clock_type::now();
  const int status = cmd_experiment(cfg);
  const double secs = seconds_since(t0);
  if (status != 0) {
    const std::string msg = "desk-scale experiment returned nonzero status";
    report(5, false, msg);
    report(6, false, msg);
    report(7, false, msg);
    return;
  }

  nlohmann::json summary;
  std::ifstream(dir / "summary.json") >> summary;
  std::map<std::string, std::map<std::size_t, double>> auc;  // engine -> n -> mean AUC
  for (const auto& row : summary.at("results"))
    auc[row.at("engine")][row.at("n").get<std::size_t>()] = row.at("mean_auc");

  bool monotone = true;
  std::ostringstream seq;
  for (const std::string engine : {"classical", "bayesian"}) {
    double prev = -1.0;
    seq << engine << ":";
    for (std::size_t n : cfg.n_list) {
      const double a = auc.at(engine).at(n);
      seq << " " << a;
      monotone = monotone && a > prev;
      prev = a;
    }
    seq << "  ";
  }
  {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "mean AUC strictly increasing in n for both engines (%s), "
                  "run took %.0f s",
                  seq.str().c_str(), secs);
    report(5, monotone, buf);
  }

  // paired AUC difference per n from the summary
  std::map<std::size_t, std::pair<double, bool>> diff;  // n -> (bayes - classical, paired)
  for (const auto& row : summary.at("differences")) {
    double d = row.at("mean_auc_diff");
    if (row.at("engine_a") == "classical") d = -d;
    diff[row.at("n").get<std::size_t>()] = {d, row.at("paired").get<bool>()};
  }
  {
    const auto [d10, paired10] = diff.at(10);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "n < p regime (n=10): Bayesian - classical mean AUC = %+.4f "
                  "(paired: %s), must exceed 0",
                  d10, paired10 ? "yes" : "no");
    report(6, d10 > 0.0 && paired10, buf);
  }
  {
    const double d200 = diff.at(200).first;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "n > p regime (n=200): |Bayesian - classical mean AUC| = "
                  "%.4f (limit 0.05)",
                  std::fabs(d200));
    report(7, std::fabs(d200) <= 0.05, buf);
  }
}

// ---------------------------------------------------------------- criterion 8
void criterion_determinism() {
  ExperimentConfig cfg;
  cfg.p = 8;
  cfg.n_list = {12, 30};
  cfg.tree_count = 3;
  cfg.mc_draws = 200;
  cfg.master_seed = 808;

  const fs::path d1 = fs::temp_directory_path() / "netinf_acceptance_det1";
  const fs::path d2 = fs::temp_directory_path() / "netinf_acceptance_det2";
  fs::remove_all(d1);
  fs::remove_all(d2);

  omp_set_num_threads(1);
  cfg.output_dir = d1;
  const int s1 = cmd_experiment(cfg);
  omp_set_num_threads(4);
  cfg.output_dir = d2;
  const int s2 = cmd_experiment(cfg);
  omp_set_num_threads(omp_get_num_procs());

  bool identical = s1 == 0 && s2 == 0;
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(d1)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), d1);
    if (rel.filename() == "manifest.json") continue;  // holds the wall time
    identical = identical && slurp(entry.path()) == slurp(d2 / rel);
    ++compared;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "same config and seed with 1 vs 4 threads: %zu files "
                "byte-identical (scores, ROC, summary)",
                compared);
  report(8, identical && compared >= 10, buf);
}

// ---------------------------------------------------------------- criterion 9
void criterion_local_guardrails() {
  SimConfig cfg;
  cfg.p = 100;
  cfg.n = 50;
  bool ok = true;
  int max_cond = 0;
  std::string error;
  try {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RngStream rng(derive_stream(909, seed));
      const SimPair pair = generate_pair(cfg, rng);
      EngineParams params;
      params.seed = seed;
      params.mc_draws = 1000;
      params.pilot = &pair.pilot;
      for (Engine engine : {Engine::Classical, Engine::Bayesian}) {
        const EdgeScores s = local_scores(pair.study, engine, params);
        for (std::size_t i = 0; i < cfg.p; ++i)
          for (std::size_t j = i + 1; j < cfg.p; ++j)
            max_cond = std::max(max_cond, s.cond_size[i][j]);
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    error = e.what();
  }
  ok = ok && max_cond <= 5;
  char buf[256];
  if (error.empty())
    std::snprintf(buf, sizeof(buf),
                  "p=100, n=50, 5 trees, both engines in local mode: max "
                  "conditioning size %d (limit 5), no singularity errors",
                  max_cond);
  else
    std::snprintf(buf, sizeof(buf), "local pipeline failed: %s", error.c_str());
  report(9, ok, buf);
}

}  // namespace

int main() {
  criterion_method_equivalence();
  criterion_classical_calibration();
  criterion_iw_sampler_moments();
  criterion_fbst_analytic();
  criteria_desk_scale_figures();
  criterion_determinism();
  criterion_local_guardrails();
  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures;
}
