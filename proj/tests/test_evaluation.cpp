#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "netinf/evaluation.hpp"

using namespace netinf;

namespace {

TreeNetwork chain(std::size_t p) {
  TreeNetwork t;
  t.p = p;
  t.parent.assign(p, 0);
  t.coeff.assign(p, 1.0);
  for (std::size_t v = 1; v < p; ++v) t.parent[v] = v - 1;
  return t;
}

EdgeScores with_scores(std::size_t p, const Matrix& score) {
  EdgeScores s = EdgeScores::make(p, ScoreKind::ClassicalP);
  s.score = score;
  return s;
}

Matrix constant_scores(std::size_t p, double value) {
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      if (i != j) m(i, j) = value;
  return m;
}

}  // namespace

TEST_CASE("perfect separation gives AUC 1") {
  const TreeNetwork t = chain(5);
  Matrix sc = constant_scores(5, 0.9);
  for (std::size_t v = 1; v < 5; ++v) sc(v - 1, v) = sc(v, v - 1) = 0.01;
  const RocCurve c = roc_from_scores(with_scores(5, sc), t);
  CHECK(c.auc == doctest::Approx(1.0));
  CHECK(c.points.front().first == 0.0);
  CHECK(c.points.front().second == 0.0);
  CHECK(c.points.back().first == 1.0);
  CHECK(c.points.back().second == 1.0);
}

TEST_CASE("indistinguishable scores give the chance diagonal") {
  const TreeNetwork t = chain(6);
  const RocCurve c = roc_from_scores(with_scores(6, constant_scores(6, 0.5)), t);
  CHECK(c.auc == doctest::Approx(0.5));
}

TEST_CASE("three-vertex hand example") {
  // edges (0,1) and (1,2); non-edge (0,2) scored between them
  const TreeNetwork t = chain(3);
  Matrix sc(3, 3);
  sc(0, 1) = sc(1, 0) = 0.1;
  sc(1, 2) = sc(2, 1) = 0.5;
  sc(0, 2) = sc(2, 0) = 0.3;
  const RocCurve c = roc_from_scores(with_scores(3, sc), t);
  // sweep: (0,0) -> (0,0.5) -> (1,0.5) -> (1,1)
  CHECK(c.auc == doctest::Approx(0.5));
  bool saw_mid = false;
  for (const auto& pt : c.points) saw_mid |= (pt.first == 0.0 && pt.second == 0.5);
  CHECK(saw_mid);
}

TEST_CASE("AUC under a random scorer is 0.5 on average") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const TreeNetwork t = chain(6);
  double sum = 0.0;
  const std::size_t reps = 200;
  for (std::size_t r = 0; r < reps; ++r) {
    Matrix sc(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) sc(i, j) = sc(j, i) = unif(rng);
    sum += roc_from_scores(with_scores(6, sc), t).auc;
  }
  CHECK(std::fabs(sum / reps - 0.5) < 0.05);
}

TEST_CASE("order-preserving score transforms leave the curve unchanged") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const TreeNetwork t = chain(7);
  Matrix sc(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) sc(i, j) = sc(j, i) = unif(rng);
  Matrix mapped = sc;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      if (i != j) mapped(i, j) = 0.25 * sc(i, j) + 0.1;
  const RocCurve a = roc_from_scores(with_scores(7, sc), t);
  const RocCurve b = roc_from_scores(with_scores(7, mapped), t);
  CHECK(a.points == b.points);
  CHECK(a.auc == doctest::Approx(b.auc).epsilon(1e-14));
}

TEST_CASE("degenerate truth is rejected") {
  TreeNetwork t = chain(2);  // one edge, zero non-edges
  CHECK_THROWS(roc_from_scores(with_scores(2, constant_scores(2, 0.5)), t));
}

TEST_CASE("vertical averaging of a perfect and a chance curve") {
  const TreeNetwork t = chain(5);
  Matrix perfect = constant_scores(5, 0.9);
  for (std::size_t v = 1; v < 5; ++v) perfect(v - 1, v) = perfect(v, v - 1) = 0.01;
  const RocCurve a = roc_from_scores(with_scores(5, perfect), t);
  const RocCurve b = roc_from_scores(with_scores(5, constant_scores(5, 0.5)), t);
  const AveragedRoc avg = average_roc({a, b});
  CHECK(avg.curve_count == 2);
  CHECK(avg.fpr_grid.size() == 101);
  CHECK(avg.mean_auc == doctest::Approx(0.75));
  // at any interior fpr the perfect curve contributes tpr 1, the chance curve
  // contributes tpr = fpr
  const double mid = avg.mean_tpr[50];
  CHECK(mid == doctest::Approx(0.75).epsilon(0.02));
  // vertical averaging is linear in tpr, so the area under the mean curve
  // equals the mean of the member areas here
  CHECK(avg.area_of_mean_curve == doctest::Approx(0.75).epsilon(0.02));
  CHECK(avg.mean_tpr.back() == doctest::Approx(1.0));
}

TEST_CASE("averaging a curve with itself is the identity") {
  const TreeNetwork t = chain(5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix sc(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) sc(i, j) = sc(j, i) = unif(rng);
  const RocCurve c = roc_from_scores(with_scores(5, sc), t);
  const AveragedRoc avg = average_roc({c, c, c});
  CHECK(avg.mean_auc == doctest::Approx(c.auc).epsilon(1e-12));
}

TEST_CASE("engine comparison with paired seeds") {
  auto curve = [](double auc, std::uint64_t seed) {
    RocCurve c;
    c.auc = auc;
    c.meta.seed = seed;
    return c;
  };
  std::map<std::string, std::vector<RocCurve>> results;
  results["bayes"] = {curve(0.9, 1), curve(0.8, 2), curve(0.85, 3)};
  results["classical"] = {curve(0.7, 1), curve(0.75, 2), curve(0.65, 3)};
  const EngineComparison cmp = compare_engines(results);
  REQUIRE(cmp.engines.size() == 2);
  double bayes_mean = 0.0, classical_mean = 0.0;
  for (const auto& e : cmp.engines) {
    if (e.engine == "bayes") bayes_mean = e.mean_auc;
    if (e.engine == "classical") classical_mean = e.mean_auc;
    CHECK(e.curve_count == 3);
    CHECK(e.std_err > 0.0);
  }
  CHECK(bayes_mean == doctest::Approx(0.85));
  CHECK(classical_mean == doctest::Approx(0.7));
  REQUIRE(cmp.differences.size() == 1);
  const auto& d = cmp.differences.front();
  CHECK(d.paired);
  CHECK(std::fabs(std::fabs(d.mean_diff) - 0.15) < 1e-12);
  // paired differences 0.2, 0.05, 0.2: sd = sqrt(0.0075), se = sd / sqrt(3)
  CHECK(d.paired_std_err == doctest::Approx(std::sqrt(0.0075 / 3.0)).epsilon(1e-9));
}

TEST_CASE("unmatched seeds fall back to an unpaired comparison") {
  auto curve = [](double auc, std::uint64_t seed) {
    RocCurve c;
    c.auc = auc;
    c.meta.seed = seed;
    return c;
  };
  std::map<std::string, std::vector<RocCurve>> results;
  results["a"] = {curve(0.9, 1), curve(0.8, 2)};
  results["b"] = {curve(0.7, 10), curve(0.75, 11)};
  const EngineComparison cmp = compare_engines(results);
  REQUIRE(cmp.differences.size() == 1);
  CHECK_FALSE(cmp.differences.front().paired);
}
