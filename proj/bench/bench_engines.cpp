// Timing comparison of the serial reference path against the OpenMP path for
// the pairwise scoring loops.
#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "netinf/bayes.hpp"
#include "netinf/classical.hpp"
#include "netinf/local.hpp"
#include "netinf/tree_sim.hpp"

using namespace netinf;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    SimConfig cfg;
    cfg.p = 60;
    cfg.n = 300;
    RngStream rng(1);
    const SimPair pair = generate_pair(cfg, rng);
    const double s = time_of(
        [&] { classical_network(pair.study, 0.05, NetworkMode::Full, ExecPolicy::Serial); },
        5);
    const double p = time_of(
        [&] { classical_network(pair.study, 0.05, NetworkMode::Full, ExecPolicy::Parallel); },
        5);
    row("classical full  p=60 n=300", s, p);
  }

  {
    SimConfig cfg;
    cfg.p = 100;
    cfg.n = 50;
    RngStream rng(2);
    const SimPair pair = generate_pair(cfg, rng);
    EngineParams params;
    const double s = time_of(
        [&] { local_scores(pair.study, Engine::Classical, params, ExecPolicy::Serial); }, 3);
    const double p = time_of(
        [&] { local_scores(pair.study, Engine::Classical, params, ExecPolicy::Parallel); }, 3);
    row("classical local p=100 n=50", s, p);
  }

  {
    SimConfig cfg;
    cfg.p = 100;
    cfg.n = 50;
    RngStream rng(3);
    const SimPair pair = generate_pair(cfg, rng);
    EngineParams params;
    params.mc_draws = 300;
    params.pilot = &pair.pilot;
    const double s = time_of(
        [&] { local_scores(pair.study, Engine::Bayesian, params, ExecPolicy::Serial); }, 2);
    const double p = time_of(
        [&] { local_scores(pair.study, Engine::Bayesian, params, ExecPolicy::Parallel); }, 2);
    row("bayesian local  p=100 n=50", s, p);
  }

  {
    SimConfig cfg;
    cfg.p = 20;
    cfg.n = 200;
    RngStream rng(4);
    const SimPair pair = generate_pair(cfg, rng);
    BayesConfig bc;
    bc.mc_draws = 300;
    const double s = time_of(
        [&] {
          bayesian_network(pair.pilot, pair.study, 0.05, NetworkMode::Full, 1,
                           bc, ExecPolicy::Serial);
        },
        2);
    const double p = time_of(
        [&] {
          bayesian_network(pair.pilot, pair.study, 0.05, NetworkMode::Full, 1,
                           bc, ExecPolicy::Parallel);
        },
        2);
    row("bayesian full   p=20 n=200", s, p);
  }

  return 0;
}
