#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "netinf/scores.hpp"
#include "netinf/tree_sim.hpp"

namespace netinf {

struct RocMeta {
  std::string engine;
  std::size_t n = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
};

/// Staircase ROC from (0,0) to (1,1); auc is its trapezoidal integral.
struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr)
  double auc = 0.0;
  RocMeta meta;

  void write_csv(const std::filesystem::path& path) const;
};

/// Threshold sweep over the distinct score values, edge predicted iff
/// score < t. Positives are the tree's p-1 edges. A truth with no edges or no
/// non-edges has undefined rates and throws.
RocCurve roc_from_scores(const EdgeScores& scores, const TreeNetwork& truth);

/// Vertical (fixed-FPR) average of ROC curves. mean_auc is the arithmetic
/// mean of member AUCs; the area of the averaged curve is reported separately.
struct AveragedRoc {
  std::vector<double> fpr_grid;
  std::vector<double> mean_tpr;
  double mean_auc = 0.0;
  double area_of_mean_curve = 0.0;
  std::size_t curve_count = 0;

  void write_csv(const std::filesystem::path& path) const;
};
AveragedRoc average_roc(const std::vector<RocCurve>& curves,
                        std::size_t grid_size = 101);

struct EngineSummary {
  std::string engine;
  double mean_auc = 0.0;
  double std_err = 0.0;
  std::size_t curve_count = 0;
};

struct EngineDifference {
  std::string engine_a;
  std::string engine_b;
  double mean_diff = 0.0;       // mean AUC(a) - mean AUC(b)
  double paired_std_err = 0.0;  // of the per-seed differences, when seeds match
  bool paired = false;
};

struct EngineComparison {
  std::vector<EngineSummary> engines;
  std::vector<EngineDifference> differences;
};

EngineComparison compare_engines(
    const std::map<std::string, std::vector<RocCurve>>& results);

}  // namespace netinf
