#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "netinf/classical.hpp"
#include "netinf/partial_corr.hpp"
#include "netinf/tree_sim.hpp"

using namespace netinf;

TEST_CASE("normal cdf and quantile are mutual inverses") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  for (double q = 0.001; q < 1.0; q += 0.0137) {
    CHECK(normal_cdf(normal_quantile(q)) == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("fisher z at the textbook point") {
  CHECK(fisher_z(0.5) == doctest::Approx(0.5493061443340549).epsilon(1e-12));
  CHECK(fisher_z(0.0) == 0.0);
  for (double r = -0.95; r < 0.96; r += 0.1)
    CHECK(fisher_z(-r) == doctest::Approx(-fisher_z(r)).epsilon(1e-12));
  CHECK_THROWS(fisher_z(1.0));
  CHECK_THROWS(fisher_z(-1.2));
}

TEST_CASE("edge p-value hand example") {
  // rho = 0.3, n = 50, |Y| = 1: stat = sqrt(46) * atanh(0.3)
  const double stat = std::sqrt(46.0) * std::atanh(0.3);
  const double expect = 2.0 * (1.0 - normal_cdf(stat));
  CHECK(edge_p_value(0.3, 50, 1) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.0358).epsilon(2e-2));
  CHECK(edge_p_value(0.0, 50, 1) == doctest::Approx(1.0));
  CHECK_THROWS(edge_p_value(0.3, 4, 1));  // needs n >= |Y| + 4
}

TEST_CASE("p-value decreases in |rho| and in n") {
  for (double r = 0.05; r < 0.9; r += 0.05)
    CHECK(edge_p_value(r + 0.05, 30, 2) < edge_p_value(r, 30, 2));
  for (std::size_t n = 10; n < 200; n += 10)
    CHECK(edge_p_value(0.2, n + 10, 2) < edge_p_value(0.2, n, 2));
  CHECK(edge_p_value(-0.4, 30, 2) == doctest::Approx(edge_p_value(0.4, 30, 2)));
}

TEST_CASE("p-values are uniform-ish under the null") {
  // independent normals; the Fisher test at level alpha should reject about
  // alpha of the time
  std::mt19937_64 rng(5);
  std::normal_distribution<double> unit(0.0, 1.0);
  const std::size_t reps = 2000;
  std::size_t rejected_05 = 0, rejected_20 = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    Dataset d;
    d.names = {"x", "y", "z"};
    d.values = Matrix(60, 3);
    for (std::size_t i = 0; i < 60; ++i)
      for (std::size_t j = 0; j < 3; ++j) d.values(i, j) = unit(rng);
    const Matrix corr = sample_correlation(d);
    const Matrix prho = partial_corr_inverse(corr);
    const double pv = edge_p_value(prho(0, 1), 60, 1);
    rejected_05 += pv < 0.05;
    rejected_20 += pv < 0.20;
  }
  const double f05 = static_cast<double>(rejected_05) / reps;
  const double f20 = static_cast<double>(rejected_20) / reps;
  CHECK(std::fabs(f05 - 0.05) < 3.0 * std::sqrt(0.05 * 0.95 / reps) + 0.01);
  CHECK(std::fabs(f20 - 0.20) < 3.0 * std::sqrt(0.20 * 0.80 / reps) + 0.01);
}

TEST_CASE("full-network inference recovers small trees at large n") {
  SimConfig cfg;
  cfg.p = 10;
  cfg.n = 1000;
  std::size_t true_edges = 0, found = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed);
    const SimPair pair = generate_pair(cfg, rng);
    const auto res = classical_network(pair.study, 0.05, NetworkMode::Full);
    res.scores.validate();
    const auto truth = pair.tree.adjacency();
    for (std::size_t i = 0; i < cfg.p; ++i)
      for (std::size_t j = i + 1; j < cfg.p; ++j) {
        CHECK(res.scores.cond_size[i][j] == static_cast<int>(cfg.p) - 2);
        if (truth[i][j]) {
          ++true_edges;
          found += res.adjacency[i][j];
        }
      }
  }
  CHECK(static_cast<double>(found) >= 0.9 * static_cast<double>(true_edges));
}

TEST_CASE("alpha = 0 yields an empty graph") {
  SimConfig cfg;
  cfg.p = 6;
  cfg.n = 200;
  RngStream rng(2);
  const SimPair pair = generate_pair(cfg, rng);
  const auto res = classical_network(pair.study, 0.0, NetworkMode::Full);
  for (std::size_t i = 0; i < cfg.p; ++i)
    for (std::size_t j = 0; j < cfg.p; ++j) CHECK_FALSE(res.adjacency[i][j]);
}

TEST_CASE("full mode refuses n <= p") {
  SimConfig cfg;
  cfg.p = 100;
  cfg.n = 50;
  RngStream rng(7);
  const SimPair pair = generate_pair(cfg, rng);
  CHECK_THROWS_AS(classical_network(pair.study, 0.05, NetworkMode::Full),
                  SingularMatrixError);
}

TEST_CASE("edge sets grow with the threshold") {
  SimConfig cfg;
  cfg.p = 8;
  cfg.n = 300;
  RngStream rng(11);
  const SimPair pair = generate_pair(cfg, rng);
  const auto res = classical_network(pair.study, 0.05, NetworkMode::Full);
  std::size_t prev = 0;
  for (double t : {0.001, 0.01, 0.05, 0.2, 0.5, 1.0}) {
    const auto adj = threshold_adjacency(res.scores, t);
    std::size_t count = 0;
    for (std::size_t i = 0; i < cfg.p; ++i)
      for (std::size_t j = i + 1; j < cfg.p; ++j) count += adj[i][j];
    CHECK(count >= prev);
    prev = count;
  }
  // at threshold 1 every pair with score < 1 is in; sanity: most pairs
  CHECK(prev > 0);
}

TEST_CASE("serial and parallel execution are bit-identical") {
  SimConfig cfg;
  cfg.p = 12;
  cfg.n = 400;
  RngStream rng(21);
  const SimPair pair = generate_pair(cfg, rng);
  const auto a = classical_network(pair.study, 0.05, NetworkMode::Full,
                                   ExecPolicy::Serial);
  const auto b = classical_network(pair.study, 0.05, NetworkMode::Full,
                                   ExecPolicy::Parallel);
  CHECK(a.scores.rho == b.scores.rho);
  CHECK(a.scores.score == b.scores.score);
  CHECK(a.adjacency == b.adjacency);
}

TEST_CASE("unrank_pair enumerates i < j row by row") {
  const std::size_t p = 7;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto pr = unrank_pair(idx, p);
      CHECK(pr.first == i);
      CHECK(pr.second == j);
      ++idx;
    }
  CHECK(idx == p * (p - 1) / 2);
}
