#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netinf/evaluation.hpp"
#include "netinf/scores.hpp"

namespace netinf {

enum class ModeChoice { Full, Local, Auto };

std::string to_string(ModeChoice mode);
std::string to_string(Engine engine);

struct ExperimentConfig {
  std::size_t p = 100;
  std::vector<std::size_t> n_list = {50, 250, 500, 1000};
  std::size_t tree_count = 500;
  std::vector<Engine> engines = {Engine::Classical, Engine::Bayesian};
  ModeChoice mode = ModeChoice::Auto;
  double alpha = 0.05;
  double e_threshold = 0.05;
  std::size_t mc_draws = 1000;
  std::optional<std::size_t> cap_override;
  std::vector<std::size_t> cap_sweep;  // non-empty enables the AUC-vs-cap series
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "out";

  void validate() const;

  /// Shrink to p=20, n_list={10,50,100,200}, tree_count=50.
  void apply_desk_scale();

  /// TOML file, then NETINF_<KEY> environment overrides on top.
  static ExperimentConfig load(const std::optional<std::filesystem::path>& toml_path);
};

/// Per-replicate record of artifacts and failures, written as manifest.json.
struct RunManifest {
  struct Entry {
    std::size_t n = 0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> files;
    std::string error;  // empty on success
  };
  std::vector<Entry> entries;
  std::string config_toml;
  double wall_seconds = 0.0;
  std::string version;

  void write(const std::filesystem::path& path) const;
};

/// Seed for one replicate task; pure function of its coordinates, so results
/// are independent of scheduling.
std::uint64_t replicate_seed(std::uint64_t master, std::size_t n,
                             std::size_t replicate, std::size_t engine_id = 0);

/// Resolve auto mode per the n > p rule.
NetworkMode resolve_mode(ModeChoice mode, std::size_t n, std::size_t p);

/// scores CSV (i,j,rho,score,conditioning_size), 1-based indices.
void write_scores_csv(const std::filesystem::path& path, const EdgeScores& scores);
EdgeScores read_scores_csv(const std::filesystem::path& path, ScoreKind kind);

int cmd_simulate(const ExperimentConfig& config, RunManifest& manifest);
int cmd_infer(const ExperimentConfig& config, RunManifest& manifest,
              ExecPolicy exec = ExecPolicy::Parallel);
int cmd_evaluate(const ExperimentConfig& config, RunManifest& manifest,
                 ExecPolicy exec = ExecPolicy::Parallel);
/// simulate + infer + evaluate, manifest and summary.json at the end.
/// Nonzero exit status when any replicate failed.
int cmd_experiment(const ExperimentConfig& config,
                   ExecPolicy exec = ExecPolicy::Parallel);

}  // namespace netinf
