#include "netinf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace netinf {

namespace {

double trapezoid_auc(const std::vector<std::pair<double, double>>& pts) {
  double auc = 0.0;
  for (std::size_t t = 1; t < pts.size(); ++t)
    auc += 0.5 * (pts[t].first - pts[t - 1].first) * (pts[t].second + pts[t - 1].second);
  return auc;
}

void write_fpr_tpr_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<double, double>>& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "fpr,tpr\n";
  char buf[80];
  for (const auto& [fpr, tpr] : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", fpr, tpr);
    out << buf;
  }
}

}  // namespace

void RocCurve::write_csv(const std::filesystem::path& path) const {
  write_fpr_tpr_csv(path, points);
}

RocCurve roc_from_scores(const EdgeScores& scores, const TreeNetwork& truth) {
  if (scores.p != truth.p)
    throw std::invalid_argument("roc_from_scores: dimension mismatch");
  const std::size_t p = scores.p;

  struct Entry {
    double score;
    bool positive;
  };
  std::vector<Entry> entries;
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const bool is_edge = truth.has_edge(i, j);
      entries.push_back({scores.score(i, j), is_edge});
      (is_edge ? pos : neg) += 1;
    }
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("roc_from_scores: truth needs both edges and non-edges");

  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.score < b.score; });

  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  std::size_t tp = 0, fp = 0;
  std::size_t t = 0;
  while (t < entries.size()) {
    const double s = entries[t].score;
    while (t < entries.size() && entries[t].score == s) {
      (entries[t].positive ? tp : fp) += 1;
      ++t;
    }
    curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(neg),
                              static_cast<double>(tp) / static_cast<double>(pos));
  }
  if (curve.points.back() != std::make_pair(1.0, 1.0))
    curve.points.emplace_back(1.0, 1.0);
  curve.auc = trapezoid_auc(curve.points);
  curve.meta.p = p;
  return curve;
}

namespace {

/// tpr at a given fpr; vertical segments collapse to their upper point.
double interpolate_tpr(const std::vector<std::pair<double, double>>& pts, double q) {
  double prev_f = 0.0, prev_t = 0.0;
  for (const auto& [f, tpr] : pts) {
    if (f >= q) {
      if (f == q || f == prev_f) {
        // take the highest tpr attained at this fpr
        double best = tpr;
        for (const auto& [f2, t2] : pts)
          if (f2 == f) best = std::max(best, t2);
        if (f == q) return best;
        return best;
      }
      const double frac = (q - prev_f) / (f - prev_f);
      return prev_t + frac * (tpr - prev_t);
    }
    prev_f = f;
    prev_t = tpr;
  }
  return 1.0;
}

}  // namespace

AveragedRoc average_roc(const std::vector<RocCurve>& curves, std::size_t grid_size) {
  if (curves.empty()) throw std::invalid_argument("average_roc: need at least one curve");
  if (grid_size < 2) throw std::invalid_argument("average_roc: grid_size must be >= 2");

  AveragedRoc out;
  out.curve_count = curves.size();
  out.fpr_grid.resize(grid_size);
  out.mean_tpr.assign(grid_size, 0.0);
  for (std::size_t g = 0; g < grid_size; ++g)
    out.fpr_grid[g] = static_cast<double>(g) / static_cast<double>(grid_size - 1);

  for (const RocCurve& c : curves) {
    // collapse vertical segments: keep max tpr per distinct fpr
    std::vector<std::pair<double, double>> steps;
    for (const auto& pt : c.points) {
      if (!steps.empty() && steps.back().first == pt.first)
        steps.back().second = std::max(steps.back().second, pt.second);
      else
        steps.push_back(pt);
    }
    for (std::size_t g = 0; g < grid_size; ++g)
      out.mean_tpr[g] += interpolate_tpr(steps, out.fpr_grid[g]);
    out.mean_auc += c.auc;
  }
  const auto cnt = static_cast<double>(curves.size());
  for (double& t : out.mean_tpr) t /= cnt;
  out.mean_auc /= cnt;

  std::vector<std::pair<double, double>> avg_pts(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g)
    avg_pts[g] = {out.fpr_grid[g], out.mean_tpr[g]};
  out.area_of_mean_curve = trapezoid_auc(avg_pts);
  return out;
}

void AveragedRoc::write_csv(const std::filesystem::path& path) const {
  std::vector<std::pair<double, double>> pts(fpr_grid.size());
  for (std::size_t g = 0; g < fpr_grid.size(); ++g) pts[g] = {fpr_grid[g], mean_tpr[g]};
  write_fpr_tpr_csv(path, pts);
}

EngineComparison compare_engines(
    const std::map<std::string, std::vector<RocCurve>>& results) {
  EngineComparison out;
  for (const auto& [name, curves] : results) {
    if (curves.empty())
      throw std::invalid_argument("compare_engines: engine '" + name + "' has no curves");
    double mean = 0.0;
    for (const auto& c : curves) mean += c.auc;
    mean /= static_cast<double>(curves.size());
    double var = 0.0;
    for (const auto& c : curves) var += (c.auc - mean) * (c.auc - mean);
    const double se = curves.size() > 1
                          ? std::sqrt(var / static_cast<double>(curves.size() - 1) /
                                      static_cast<double>(curves.size()))
                          : 0.0;
    out.engines.push_back({name, mean, se, curves.size()});
  }

  for (std::size_t a = 0; a < out.engines.size(); ++a)
    for (std::size_t b = a + 1; b < out.engines.size(); ++b) {
      const auto& ca = results.at(out.engines[a].engine);
      const auto& cb = results.at(out.engines[b].engine);
      EngineDifference diff;
      diff.engine_a = out.engines[a].engine;
      diff.engine_b = out.engines[b].engine;
      diff.mean_diff = out.engines[a].mean_auc - out.engines[b].mean_auc;
      if (ca.size() == cb.size()) {
        bool seeds_match = true;
        for (std::size_t t = 0; t < ca.size(); ++t)
          if (ca[t].meta.seed != cb[t].meta.seed) {
            seeds_match = false;
            break;
          }
        if (seeds_match) {
          diff.paired = true;
          double dmean = 0.0;
          for (std::size_t t = 0; t < ca.size(); ++t) dmean += ca[t].auc - cb[t].auc;
          dmean /= static_cast<double>(ca.size());
          double dvar = 0.0;
          for (std::size_t t = 0; t < ca.size(); ++t) {
            const double d = ca[t].auc - cb[t].auc - dmean;
            dvar += d * d;
          }
          diff.paired_std_err =
              ca.size() > 1 ? std::sqrt(dvar / static_cast<double>(ca.size() - 1) /
                                        static_cast<double>(ca.size()))
                            : 0.0;
        }
      }
      out.differences.push_back(diff);
    }
  return out;
}

}  // namespace netinf
